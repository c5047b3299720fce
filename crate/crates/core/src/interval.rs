//! Half-open intervals and finite ordered partitions of `[0, 1)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::rat::{format_rat, Rat, RatPoint};
use crate::{Error, Result};

/// A half-open interval `[left, right)` inside `[0, 1]` with `left < right`.
///
/// Its interior is the open interval `(left, right)`, also when `left = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    left: RatPoint,
    right: Rat,
}

impl Interval {
    pub fn new(left: RatPoint, right: Rat) -> Result<Self> {
        if right > Rat::one() || *left.value() >= right {
            return Err(Error::BadInterval);
        }
        Ok(Interval { left, right })
    }

    /// Builds `[a, b)` from raw rationals.
    pub fn from_rats(a: Rat, b: Rat) -> Result<Self> {
        Interval::new(RatPoint::new(a)?, b)
    }

    /// Convenience constructor from small integers: `[an/ad, bn/bd)`.
    pub fn from_ints(an: i64, ad: i64, bn: i64, bd: i64) -> Result<Self> {
        Interval::from_rats(crate::rat(an, ad), crate::rat(bn, bd))
    }

    /// The whole space `[0, 1)`.
    pub fn unit() -> Self {
        Interval {
            left: RatPoint::zero(),
            right: Rat::one(),
        }
    }

    pub fn left(&self) -> &RatPoint {
        &self.left
    }

    pub fn right(&self) -> &Rat {
        &self.right
    }

    pub fn len(&self) -> Rat {
        &self.right - self.left.value()
    }

    pub fn midpoint(&self) -> Rat {
        (self.left.value() + &self.right) / crate::rat(2, 1)
    }

    /// Membership in the half-open set `[left, right)`.
    pub fn contains(&self, x: &RatPoint) -> bool {
        x >= &self.left && *x.value() < self.right
    }

    /// Membership in the open interior `(left, right)`.
    pub fn interior_contains(&self, x: &Rat) -> bool {
        x > self.left.value() && *x < self.right
    }

    /// Set containment `self ⊆ other` (as half-open sets).
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.left >= other.left && self.right <= other.right
    }

    /// Set disjointness of the half-open intervals (touching is allowed).
    pub fn is_disjoint_from(&self, other: &Interval) -> bool {
        self.right <= *other.left.value() || other.right <= *self.left.value()
    }

    /// `true` when `other` starts exactly where `self` ends.
    pub fn is_followed_by(&self, other: &Interval) -> bool {
        self.right == *other.left.value()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.left, format_rat(&self.right))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A finite ordered partition of `[0, 1)` into half-open intervals.
///
/// The intervals are sorted, pairwise adjacent and cover `[0, 1)` exactly;
/// this sorted form is the canonical one, so `==` is partition equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    intervals: Vec<Interval>,
}

impl Partition {
    /// The one-interval partition `{[0, 1)}`.
    pub fn unit() -> Self {
        Partition {
            intervals: alloc::vec![Interval::unit()],
        }
    }

    /// Builds the partition whose interval left endpoints are exactly
    /// `{0} ∪ breakpoints`. Duplicates and an explicit `0` are harmless.
    pub fn from_breakpoints<I: IntoIterator<Item = RatPoint>>(breakpoints: I) -> Self {
        let mut cuts: BTreeSet<RatPoint> = breakpoints.into_iter().collect();
        cuts.insert(RatPoint::zero());
        let cuts: Vec<RatPoint> = cuts.into_iter().collect();
        let mut intervals = Vec::with_capacity(cuts.len());
        for (k, left) in cuts.iter().enumerate() {
            let right = match cuts.get(k + 1) {
                Some(next) => next.value().clone(),
                None => Rat::one(),
            };
            intervals.push(Interval {
                left: left.clone(),
                right,
            });
        }
        Partition { intervals }
    }

    /// Validates an explicit list of intervals as a tiling of `[0, 1)`.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::BadTiling("no intervals".into()));
        }
        intervals.sort_by(|a, b| a.left.cmp(&b.left));
        if !intervals[0].left.is_zero() {
            return Err(Error::BadTiling(format!(
                "first interval starts at {}",
                intervals[0].left
            )));
        }
        for pair in intervals.windows(2) {
            if !pair[0].is_followed_by(&pair[1]) {
                return Err(Error::BadTiling(format!(
                    "gap or overlap between {} and {}",
                    pair[0], pair[1]
                )));
            }
        }
        let last = intervals.last().expect("nonempty");
        if !last.right.is_one() {
            return Err(Error::BadTiling(format!("last interval ends at {}", format_rat(&last.right))));
        }
        Ok(Partition { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The interval left endpoints, in increasing order (first is `0`).
    pub fn breakpoints(&self) -> impl Iterator<Item = &RatPoint> {
        self.intervals.iter().map(|iv| &iv.left)
    }

    fn breakpoint_set(&self) -> BTreeSet<&RatPoint> {
        self.breakpoints().collect()
    }

    /// The coarsest partition refining both inputs; its breakpoint set is
    /// the union of both breakpoint sets.
    pub fn common_refinement(&self, other: &Partition) -> Partition {
        Partition::from_breakpoints(
            self.breakpoints()
                .chain(other.breakpoints())
                .cloned(),
        )
    }

    /// `true` iff every interval of `self` is contained in some interval of
    /// `coarser`. For tilings of `[0, 1)` this is breakpoint-set inclusion.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let fine = self.breakpoint_set();
        coarser.breakpoints().all(|b| fine.contains(b))
    }

    /// The partition obtained by also cutting at `x` (a single-interval
    /// split when `x` is not already a breakpoint).
    pub fn with_breakpoint(&self, x: RatPoint) -> Partition {
        Partition::from_breakpoints(self.breakpoints().cloned().chain(core::iter::once(x)))
    }

    /// The interval of the partition containing `x`.
    pub fn interval_containing(&self, x: &RatPoint) -> &Interval {
        let idx = self
            .intervals
            .partition_point(|iv| iv.left <= *x)
            .saturating_sub(1);
        &self.intervals[idx]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", iv)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use alloc::vec;
    use proptest::prelude::*;

    fn pt(n: i64, d: i64) -> RatPoint {
        RatPoint::from_ints(n, d).unwrap()
    }

    #[test]
    fn breakpoint_builder_sorts_and_inserts_zero() {
        let p = Partition::from_breakpoints(vec![]);
        assert_eq!(p, Partition::unit());
        assert_eq!(p.len(), 1);

        let p = Partition::from_breakpoints(vec![pt(1, 2)]);
        assert_eq!(p.intervals()[0], Interval::from_ints(0, 1, 1, 2).unwrap());
        assert_eq!(p.intervals()[1], Interval::from_ints(1, 2, 1, 1).unwrap());

        let p = Partition::from_breakpoints(vec![pt(2, 3), pt(1, 3)]);
        assert_eq!(p.len(), 3);
        assert_eq!(p.intervals()[1], Interval::from_ints(1, 3, 2, 3).unwrap());
    }

    #[test]
    fn refinement_examples() {
        let halves = Partition::from_breakpoints(vec![pt(1, 2)]);
        let thirds = Partition::from_breakpoints(vec![pt(1, 3)]);
        let both = halves.common_refinement(&thirds);
        assert_eq!(
            both,
            Partition::from_breakpoints(vec![pt(1, 3), pt(1, 2)])
        );
        assert_eq!(halves.common_refinement(&halves), halves);
        assert_eq!(Partition::unit().common_refinement(&thirds), thirds);

        assert!(thirds.refines(&Partition::unit()));
        assert!(!Partition::unit().refines(&halves));
        assert!(halves.refines(&halves));
    }

    #[test]
    fn explicit_tilings_are_validated() {
        let ok = Partition::from_intervals(vec![
            Interval::from_ints(1, 2, 1, 1).unwrap(),
            Interval::from_ints(0, 1, 1, 2).unwrap(),
        ])
        .unwrap();
        assert_eq!(ok.len(), 2);

        let gap = Partition::from_intervals(vec![
            Interval::from_ints(0, 1, 1, 3).unwrap(),
            Interval::from_ints(1, 2, 1, 1).unwrap(),
        ]);
        assert!(matches!(gap, Err(Error::BadTiling(_))));

        let short = Partition::from_intervals(vec![Interval::from_ints(0, 1, 2, 3).unwrap()]);
        assert!(matches!(short, Err(Error::BadTiling(_))));
    }

    #[test]
    fn interval_containing_picks_the_right_cell() {
        let p = Partition::from_breakpoints(vec![pt(1, 3), pt(2, 3)]);
        assert_eq!(p.interval_containing(&pt(0, 1)).left(), &pt(0, 1));
        assert_eq!(p.interval_containing(&pt(1, 3)).left(), &pt(1, 3));
        assert_eq!(p.interval_containing(&pt(5, 6)).left(), &pt(2, 3));
    }

    // Oracle for `refines`: direct containment check, quadratic on purpose.
    fn refines_by_containment(fine: &Partition, coarse: &Partition) -> bool {
        fine.intervals()
            .iter()
            .all(|a| coarse.intervals().iter().any(|b| a.is_subset_of(b)))
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        proptest::collection::vec((1u32..64, 1u32..=64), 0..6).prop_map(|cuts| {
            Partition::from_breakpoints(cuts.into_iter().filter_map(|(p, q)| {
                let v = rat(p as i64, q as i64);
                RatPoint::new(v).ok()
            }))
        })
    }

    proptest! {
        #[test]
        fn common_refinement_refines_both(p in arb_partition(), q in arb_partition()) {
            let r = p.common_refinement(&q);
            prop_assert!(r.refines(&p));
            prop_assert!(r.refines(&q));
            prop_assert!(refines_by_containment(&r, &p));
            prop_assert!(refines_by_containment(&r, &q));
        }

        #[test]
        fn common_refinement_is_commutative_associative_idempotent(
            p in arb_partition(), q in arb_partition(), r in arb_partition()
        ) {
            prop_assert_eq!(p.common_refinement(&q), q.common_refinement(&p));
            prop_assert_eq!(
                p.common_refinement(&q).common_refinement(&r),
                p.common_refinement(&q.common_refinement(&r))
            );
            prop_assert_eq!(p.common_refinement(&p), p);
        }

        #[test]
        fn refines_matches_containment_oracle(p in arb_partition(), q in arb_partition()) {
            prop_assert_eq!(p.refines(&q), refines_by_containment(&p, &q));
        }

        #[test]
        fn breakpoint_count_matches(cuts in proptest::collection::btree_set((1u32..64, 1u32..=64), 0..6)) {
            let points: alloc::collections::BTreeSet<RatPoint> = cuts
                .into_iter()
                .filter_map(|(p, q)| RatPoint::new(rat(p as i64, q as i64)).ok())
                .collect();
            let with_zero = points.len() + usize::from(!points.contains(&RatPoint::zero()));
            let part = Partition::from_breakpoints(points);
            prop_assert_eq!(part.len(), with_zero);
        }
    }
}
