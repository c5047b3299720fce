//! Finitely supported permutations of rational points of `[0, 1)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::rat::RatPoint;
use crate::{Error, Result};

/// A permutation of `[0, 1)` moving only finitely many points.
///
/// Canonical form: only non-fixed points are stored, so `==` is equality of
/// permutations.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FinPerm {
    map: BTreeMap<RatPoint, RatPoint>,
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::default()
    }

    /// Builds a permutation from `x -> image` pairs. Fixed points may be
    /// listed and are dropped. Fails unless the pairs describe a bijection
    /// of their domain set onto itself.
    pub fn from_images<I: IntoIterator<Item = (RatPoint, RatPoint)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut values = BTreeMap::new();
        for (x, y) in pairs {
            if let Some(old) = map.insert(x.clone(), y.clone()) {
                if old != map[&x] {
                    return Err(Error::NotBijective(format!("{} has two images", x)));
                }
                continue;
            }
            if values.insert(y.clone(), x.clone()).is_some() {
                return Err(Error::NotBijective(format!("{} is hit twice", y)));
            }
        }
        if map.len() != values.len() {
            return Err(Error::NotBijective("domain and image sizes differ".into()));
        }
        for x in map.keys() {
            if !values.contains_key(x) {
                return Err(Error::NotBijective(format!("{} is never hit", x)));
            }
        }
        map.retain(|x, y| x != y);
        Ok(FinPerm { map })
    }

    /// The transposition exchanging two distinct points.
    pub fn transposition(a: RatPoint, b: RatPoint) -> Result<Self> {
        if a == b {
            return Err(Error::NotBijective(format!("transposition of {} with itself", a)));
        }
        let mut map = BTreeMap::new();
        map.insert(a.clone(), b.clone());
        map.insert(b, a);
        Ok(FinPerm { map })
    }

    /// The cycle sending `points[k]` to `points[k + 1]` (cyclically).
    pub fn from_cycle(points: &[RatPoint]) -> Result<Self> {
        FinPerm::from_images(points.iter().enumerate().map(|(k, x)| {
            (x.clone(), points[(k + 1) % points.len()].clone())
        }))
    }

    pub fn apply(&self, x: &RatPoint) -> RatPoint {
        self.map.get(x).cloned().unwrap_or_else(|| x.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// The points actually moved, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = &RatPoint> {
        self.map.keys()
    }

    pub fn support_len(&self) -> usize {
        self.map.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&RatPoint, &RatPoint)> {
        self.map.iter()
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &FinPerm) -> FinPerm {
        let mut map = BTreeMap::new();
        for x in other.map.keys().chain(self.map.keys()) {
            let y = self.apply(&other.apply(x));
            if y != *x {
                map.insert(x.clone(), y);
            }
        }
        FinPerm { map }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm {
            map: self.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// The cycle decomposition over the support (cycles of length >= 2,
    /// each starting at its smallest point, sorted by that point).
    pub fn cycles(&self) -> Vec<Vec<RatPoint>> {
        let mut seen: BTreeMap<&RatPoint, bool> = self.map.keys().map(|x| (x, false)).collect();
        let mut out = Vec::new();
        for start in self.map.keys() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                *seen.get_mut(x).expect("support point") = true;
                cycle.push(x.clone());
                x = &self.map[x];
                if x == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPerm{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pt(n: i64, d: i64) -> RatPoint {
        RatPoint::from_ints(n, d).unwrap()
    }

    #[test]
    fn canonical_form_drops_fixed_points() {
        let p = FinPerm::from_images(vec![
            (pt(0, 1), pt(1, 2)),
            (pt(1, 2), pt(0, 1)),
            (pt(1, 3), pt(1, 3)),
        ])
        .unwrap();
        assert_eq!(p.support_len(), 2);
        assert_eq!(p, FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap());
    }

    #[test]
    fn non_bijections_are_rejected() {
        assert!(FinPerm::from_images(vec![(pt(0, 1), pt(1, 2))]).is_err());
        assert!(FinPerm::from_images(vec![
            (pt(0, 1), pt(1, 2)),
            (pt(1, 3), pt(1, 2)),
        ])
        .is_err());
        assert!(FinPerm::transposition(pt(1, 2), pt(1, 2)).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let c = FinPerm::from_cycle(&[pt(0, 1), pt(1, 3), pt(2, 3)]).unwrap();
        assert_eq!(c.apply(&pt(0, 1)), pt(1, 3));
        assert_eq!(c.apply(&pt(2, 3)), pt(0, 1));
        assert_eq!(c.apply(&pt(1, 2)), pt(1, 2));
        assert!(c.compose(&c).compose(&c).is_identity());
        assert!(c.compose(&c.inverse()).is_identity());

        let t = FinPerm::transposition(pt(0, 1), pt(1, 3)).unwrap();
        // (0 1/3) ∘ (0 1/3 2/3) maps 0 -> 1/3 -> 0, fixes 1/3? no: 1/3 -> 2/3.
        let comp = t.compose(&c);
        assert_eq!(comp.apply(&pt(0, 1)), pt(0, 1));
        assert_eq!(comp.apply(&pt(1, 3)), pt(2, 3));
        assert_eq!(comp.apply(&pt(2, 3)), pt(1, 3));
    }

    #[test]
    fn cycle_decomposition_is_sorted() {
        let p = FinPerm::from_images(vec![
            (pt(1, 2), pt(3, 4)),
            (pt(3, 4), pt(1, 2)),
            (pt(0, 1), pt(1, 8)),
            (pt(1, 8), pt(0, 1)),
        ])
        .unwrap();
        let cycles = p.cycles();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0][0], pt(0, 1));
        assert_eq!(cycles[1][0], pt(1, 2));
    }
}
