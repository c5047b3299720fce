//! Constructive factorizations of carrier elements.
//!
//! * [`decompose_flip_perm_rc`] writes a piecewise isometry as
//!   `flips ∘ permutation ∘ right-continuous exchange`,
//! * [`decompose_rc_perm_flip`] is the mirrored factorization,
//! * [`normalize_to_iet`] peels off a piecewise-affine homeomorphism so that
//!   a unit-slope element remains,
//! * [`swaps_factorization`] writes a right-continuous exchange as a word in
//!   adjacent block swaps,
//! * [`flips_factorization`] turns that into a flip word with an exact
//!   finite-permutation residual,
//! * [`conjugate_two_flips_to_one`] conjugates a product of two disjoint
//!   flips to a single flip anchored at 0.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::perm::FinPerm;
use crate::pwmap::PwMap;
use crate::rat::{rat, Rat, RatPoint};
use crate::{Error, Result};

/// Product of flips over pairwise disjoint supports (order immaterial).
pub fn flip_product(intervals: &[Interval]) -> PwMap {
    intervals
        .iter()
        .fold(PwMap::identity(), |acc, iv| acc.compose(&PwMap::flip(iv)))
}

/// Factorization `h = flips ∘ perm ∘ rc` of a piecewise isometry, where the
/// flip supports are the image intervals of the reversed pieces, `perm` is
/// finitely supported and `rc` is a right-continuous order-preserving
/// exchange.
#[derive(Clone, Debug)]
pub struct FlipPermRc {
    pub flips: Vec<Interval>,
    pub perm: FinPerm,
    pub rc: PwMap,
}

impl FlipPermRc {
    pub fn recompose(&self) -> PwMap {
        flip_product(&self.flips)
            .compose(&PwMap::from_finperm(&self.perm))
            .compose(&self.rc)
    }
}

/// The mirrored factorization `h = rc ∘ perm ∘ flips`.
#[derive(Clone, Debug)]
pub struct RcPermFlips {
    pub rc: PwMap,
    pub perm: FinPerm,
    pub flips: Vec<Interval>,
}

impl RcPermFlips {
    pub fn recompose(&self) -> PwMap {
        self.rc
            .compose(&PwMap::from_finperm(&self.perm))
            .compose(&flip_product(&self.flips))
    }
}

/// Factorization `h = iet ∘ homeo` with `iet` of unit slopes and `homeo` a
/// piecewise-affine orientation-preserving homeomorphism.
#[derive(Clone, Debug)]
pub struct HomeoSplit {
    pub iet: PwMap,
    pub homeo: PwMap,
}

impl HomeoSplit {
    pub fn recompose(&self) -> PwMap {
        self.iet.compose(&self.homeo)
    }
}

/// A word in flips approximating an element up to a finitely supported
/// permutation: `product() = input ∘ residual⁻¹` exactly.
///
/// The list composes first-element-first: `product()` applies `flips[0]`
/// first and `flips[last]` last.
#[derive(Clone, Debug)]
pub struct FlipWord {
    pub flips: Vec<Interval>,
    pub residual: FinPerm,
}

impl FlipWord {
    /// The exact product of the flip word (first element applied first).
    pub fn product(&self) -> PwMap {
        self.flips
            .iter()
            .fold(PwMap::identity(), |acc, iv| PwMap::flip(iv).compose(&acc))
    }

    /// `product() ∘ residual`, which equals the factorized element.
    pub fn recompose(&self) -> PwMap {
        self.product().compose(&PwMap::from_finperm(&self.residual))
    }
}

fn require_unit_slopes(h: &PwMap) -> Result<()> {
    let one = Rat::one();
    if h.pieces().iter().any(|p| p.slope().abs() != one) {
        return Err(Error::NonUnitSlopes);
    }
    Ok(())
}

/// Decomposes a unit-slope element as `flips ∘ perm ∘ rc`.
///
/// The right-continuous part sends each piece onto its image interval
/// order-preservingly; the flips reverse the image intervals of the reversed
/// pieces (they fix all image-interval endpoints); the permutation absorbs
/// the breakpoint defect. Reconstruction is exact.
pub fn decompose_flip_perm_rc(h: &PwMap) -> Result<FlipPermRc> {
    require_unit_slopes(h)?;
    let mut flips = Vec::new();
    let mut blocks = Vec::new();
    let mut perm_pairs = Vec::new();
    for piece in h.pieces() {
        let hull = h.image_hull(piece.source());
        if piece.is_reversing() {
            flips.push(hull.clone());
        }
        perm_pairs.push((hull.left().clone(), h.apply(piece.source().left())));
        blocks.push((piece.source().clone(), hull.left().value().clone()));
    }
    let rc = PwMap::rc_rearrangement(blocks).expect("image hulls tile [0, 1)");
    let perm = FinPerm::from_images(perm_pairs)
        .expect("breakpoint images permute the image-interval endpoints");
    Ok(FlipPermRc { flips, perm, rc })
}

/// Decomposes a unit-slope element as `rc ∘ perm ∘ flips`, by decomposing
/// the inverse and inverting the factors.
pub fn decompose_rc_perm_flip(h: &PwMap) -> Result<RcPermFlips> {
    let d = decompose_flip_perm_rc(&h.inverse())?;
    Ok(RcPermFlips {
        rc: d.rc.inverse(),
        perm: d.perm.inverse(),
        flips: d.flips,
    })
}

/// Splits any carrier element as `iet ∘ homeo`, where `homeo` stretches each
/// affine piece to the length of its image (so `iet := h ∘ homeo⁻¹` is a
/// piecewise isometry) and is itself continuous and order-preserving.
pub fn normalize_to_iet(h: &PwMap) -> HomeoSplit {
    let mut pieces = Vec::new();
    let mut points = Vec::new();
    let mut cursor = Rat::zero();
    for piece in h.pieces() {
        let magnitude = piece.slope().abs();
        let offset = &cursor - &magnitude * piece.source().left().value();
        points.push((
            piece.source().left().clone(),
            RatPoint::new(cursor.clone()).expect("cumulative image length below 1"),
        ));
        pieces.push((piece.source().clone(), magnitude.clone(), offset));
        cursor += magnitude * piece.source().len();
    }
    debug_assert!(cursor.is_one(), "image lengths of a bijection sum to 1");
    let homeo = PwMap::build(pieces, points).expect("length-matching homeomorphism is valid");
    let iet = h.compose(&homeo.inverse());
    HomeoSplit { iet, homeo }
}

/// Writes a right-continuous order-preserving exchange as a product of
/// adjacent block swaps: composing [`PwMap::swap_adjacent`] over the list
/// with the *left* factor applied *last* reproduces the input exactly.
///
/// Selection sort: the block destined for the leftmost remaining position
/// is moved to the front by adjacent swaps; deterministic, not length
/// minimal.
pub fn swaps_factorization(f: &PwMap) -> Result<Vec<(Interval, Interval)>> {
    require_unit_slopes(f)?;
    let feats = f.features();
    if !feats.right_continuous
        || feats.orientation != crate::pwmap::OrientationProfile::AllPreserving
    {
        return Err(Error::NotRcExchange);
    }
    let pieces = f.pieces();
    let n = pieces.len();
    let lens: Vec<Rat> = pieces.iter().map(|p| p.source().len()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let da = f.point_images()[pieces[a].source().left()].clone();
        let db = f.point_images()[pieces[b].source().left()].clone();
        da.cmp(&db)
    });

    let mut layout: Vec<usize> = (0..n).collect();
    let mut chronological = Vec::new();
    for (t, &destined) in order.iter().enumerate() {
        let c = layout
            .iter()
            .position(|&x| x == destined)
            .expect("block present");
        for i in (t..c).rev() {
            let start: Rat = layout[..i].iter().map(|&x| lens[x].clone()).sum();
            let mid = &start + &lens[layout[i]];
            let end = &mid + &lens[layout[i + 1]];
            chronological.push((
                Interval::from_rats(start, mid.clone()).expect("positive block"),
                Interval::from_rats(mid, end).expect("positive block"),
            ));
            layout.swap(i, i + 1);
        }
    }
    chronological.reverse();
    Ok(chronological)
}

/// Composes a swap word as produced by [`swaps_factorization`] (left factor
/// applied last).
pub fn compose_swaps(word: &[(Interval, Interval)]) -> PwMap {
    word.iter().rev().fold(PwMap::identity(), |acc, (a, b)| {
        PwMap::swap_adjacent(a, b)
            .expect("swap word pairs are consecutive")
            .compose(&acc)
    })
}

/// Factors a unit-slope element into flips, modulo a finitely supported
/// permutation: each adjacent swap expands to the three flips of its two
/// blocks and their union, applied block-first.
pub fn flips_factorization(h: &PwMap) -> Result<FlipWord> {
    let d = decompose_flip_perm_rc(h)?;
    let swaps = swaps_factorization(&d.rc).expect("rc part is an rc exchange");
    let mut flips = Vec::new();
    // The swap word applies its last element first; the flip list applies
    // its first element first.
    for (i, j) in swaps.iter().rev() {
        let union = Interval::new(i.left().clone(), j.right().clone())
            .expect("consecutive blocks join");
        flips.push(i.clone());
        flips.push(j.clone());
        flips.push(union);
    }
    flips.extend(d.flips.iter().cloned());
    let product = FlipWord {
        flips,
        residual: FinPerm::identity(),
    };
    let residual = product
        .product()
        .inverse()
        .compose(h)
        .to_finperm()
        .expect("flip word equals the input modulo a finite permutation");
    Ok(FlipWord {
        flips: product.flips,
        residual,
    })
}

/// Conjugates `flip(i) ∘ flip(j)` (disjoint supports) to the single flip of
/// `k = [0, |i| + |j|)` by an order-preserving piecewise isometry `c`:
/// `c ∘ flip(i) ∘ flip(j) ∘ c⁻¹ = flip(k)` modulo a finite permutation.
///
/// The halves of `i` and `j` are laid onto the mirror-paired quarters of
/// `k`, which intertwines the two reversals with the single one.
pub fn conjugate_two_flips_to_one(i: &Interval, j: &Interval) -> Result<(PwMap, Interval)> {
    if !i.is_disjoint_from(j) {
        return Err(Error::OverlappingIntervals);
    }
    let half_i = i.len() / rat(2, 1);
    let half_j = j.len() / rat(2, 1);
    let total = i.len() + j.len();
    let k = Interval::from_rats(Rat::zero(), total.clone()).expect("nonempty union");

    let i_mid = i.midpoint();
    let j_mid = j.midpoint();
    let mut blocks = alloc::vec![
        (
            Interval::new(i.left().clone(), i_mid.clone()).expect("half"),
            Rat::zero(),
        ),
        (
            Interval::from_rats(i_mid, i.right().clone()).expect("half"),
            &total - &half_i,
        ),
        (
            Interval::new(j.left().clone(), j_mid.clone()).expect("half"),
            half_i.clone(),
        ),
        (
            Interval::from_rats(j_mid, j.right().clone()).expect("half"),
            &half_i + &half_j,
        ),
    ];

    // Pack the complement of i ∪ j behind k, in source order.
    let (first, second) = if i.left() < j.left() { (i, j) } else { (j, i) };
    let mut cursor = total;
    let mut push_gap = |a: Rat, b: Rat, cursor: &mut Rat| {
        if a < b {
            let gap = Interval::from_rats(a, b).expect("nonempty gap");
            let len = gap.len();
            blocks.push((gap, cursor.clone()));
            *cursor += len;
        }
    };
    push_gap(Rat::zero(), first.left().value().clone(), &mut cursor);
    push_gap(first.right().clone(), second.left().value().clone(), &mut cursor);
    push_gap(second.right().clone(), Rat::one(), &mut cursor);

    let c = PwMap::rc_rearrangement(blocks).expect("rearranged blocks tile");
    Ok((c, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwmap::Orientation;
    use crate::signature::{finperm_sign, signature, SignBit};
    use alloc::vec;

    fn pt(n: i64, d: i64) -> RatPoint {
        RatPoint::from_ints(n, d).unwrap()
    }

    fn iv(an: i64, ad: i64, bn: i64, bd: i64) -> Interval {
        Interval::from_ints(an, ad, bn, bd).unwrap()
    }

    fn half_swap() -> PwMap {
        PwMap::swap_adjacent(&iv(0, 1, 1, 2), &iv(1, 2, 1, 1)).unwrap()
    }

    fn h3() -> PwMap {
        let t = FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap();
        PwMap::from_finperm(&t).compose(&half_swap())
    }

    fn rotation_third() -> PwMap {
        PwMap::from_iet(
            &[rat(2, 3), rat(1, 3)],
            &[1, 0],
            &[Orientation::Preserving, Orientation::Preserving],
        )
        .unwrap()
    }

    #[test]
    fn flip_perm_rc_examples() {
        let d = decompose_flip_perm_rc(&h3()).unwrap();
        assert!(d.flips.is_empty());
        assert_eq!(d.perm, FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap());
        assert_eq!(d.rc, half_swap());
        assert_eq!(d.recompose(), h3());

        let f = PwMap::flip(&iv(1, 4, 1, 2));
        let d = decompose_flip_perm_rc(&f).unwrap();
        assert_eq!(d.flips, vec![iv(1, 4, 1, 2)]);
        assert!(d.perm.is_identity());
        assert!(d.rc.is_identity());
        assert_eq!(d.recompose(), f);

        let d = decompose_flip_perm_rc(&PwMap::identity()).unwrap();
        assert!(d.flips.is_empty());
        assert!(d.perm.is_identity());
        assert!(d.rc.is_identity());

        let stretch = PwMap::build(
            vec![
                (iv(0, 1, 1, 2), rat(1, 2), rat(0, 1)),
                (iv(1, 2, 1, 1), rat(3, 2), rat(-1, 2)),
            ],
            vec![(pt(0, 1), pt(0, 1)), (pt(1, 2), pt(1, 4))],
        )
        .unwrap();
        assert!(matches!(
            decompose_flip_perm_rc(&stretch),
            Err(Error::NonUnitSlopes)
        ));
    }

    #[test]
    fn rc_perm_flip_examples() {
        let d = decompose_rc_perm_flip(&PwMap::identity()).unwrap();
        assert!(d.rc.is_identity() && d.perm.is_identity() && d.flips.is_empty());

        let f = PwMap::flip(&iv(1, 8, 3, 8));
        let d = decompose_rc_perm_flip(&f).unwrap();
        assert_eq!(d.flips, vec![iv(1, 8, 3, 8)]);
        assert!(d.rc.is_identity() && d.perm.is_identity());
        assert_eq!(d.recompose(), f);

        let d = decompose_rc_perm_flip(&h3()).unwrap();
        assert_eq!(d.recompose(), h3());
    }

    #[test]
    fn normalize_examples() {
        // A continuous increasing kinked map splits off entirely.
        let kinked = PwMap::build(
            vec![
                (iv(0, 1, 1, 2), rat(1, 2), rat(0, 1)),
                (iv(1, 2, 1, 1), rat(3, 2), rat(-1, 2)),
            ],
            vec![(pt(0, 1), pt(0, 1)), (pt(1, 2), pt(1, 4))],
        )
        .unwrap();
        let s = normalize_to_iet(&kinked);
        assert!(s.iet.is_identity());
        assert_eq!(s.homeo, kinked);
        assert_eq!(s.recompose(), kinked);

        // Unit slopes already: nothing to peel off.
        let s = normalize_to_iet(&h3());
        assert!(s.homeo.is_identity());
        assert_eq!(s.iet, h3());

        // Scaling swap: [0,1/3) onto [1/2,1) and [1/3,1) onto [0,1/2).
        let scaling = PwMap::build(
            vec![
                (iv(0, 1, 1, 3), rat(3, 2), rat(1, 2)),
                (iv(1, 3, 1, 1), rat(3, 4), rat(-1, 4)),
            ],
            vec![(pt(0, 1), pt(1, 2)), (pt(1, 3), pt(0, 1))],
        )
        .unwrap();
        let s = normalize_to_iet(&scaling);
        assert_eq!(s.iet, half_swap());
        assert_eq!(s.homeo.apply(&pt(1, 3)), pt(1, 2));
        assert_eq!(s.recompose(), scaling);
    }

    #[test]
    fn swaps_factorization_examples() {
        assert!(swaps_factorization(&PwMap::identity()).unwrap().is_empty());

        let word = swaps_factorization(&half_swap()).unwrap();
        assert_eq!(word, vec![(iv(0, 1, 1, 2), iv(1, 2, 1, 1))]);
        assert_eq!(compose_swaps(&word), half_swap());

        let r3 = rotation_third();
        let word = swaps_factorization(&r3).unwrap();
        assert_eq!(compose_swaps(&word), r3);

        assert!(matches!(
            swaps_factorization(&h3()),
            Err(Error::NotRcExchange)
        ));
        assert!(matches!(
            swaps_factorization(&PwMap::flip(&iv(0, 1, 1, 1))),
            Err(Error::NotRcExchange)
        ));
    }

    #[test]
    fn flip_word_examples() {
        let f = PwMap::flip(&iv(1, 4, 1, 2));
        let w = flips_factorization(&f).unwrap();
        assert_eq!(w.flips, vec![iv(1, 4, 1, 2)]);
        assert!(w.residual.is_identity());
        assert_eq!(w.recompose(), f);

        let w = flips_factorization(&half_swap()).unwrap();
        assert_eq!(w.flips, vec![iv(0, 1, 1, 2), iv(1, 2, 1, 1), iv(0, 1, 1, 1)]);
        assert_eq!(
            w.residual,
            FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap()
        );
        assert_eq!(w.recompose(), half_swap());
        assert_eq!(w.product(), h3());

        let r3 = rotation_third();
        let w = flips_factorization(&r3).unwrap();
        assert!(w.product().eq_mod_finperm(&r3));
        assert_eq!(w.recompose(), r3);
        assert_eq!(
            signature(&r3),
            SignBit::from_parity(w.flips.len()) + finperm_sign(&w.residual)
        );
    }

    #[test]
    fn two_flips_conjugate_to_one() {
        let cases = [
            (iv(0, 1, 1, 4), iv(1, 3, 7, 12), iv(0, 1, 1, 2)),
            (iv(0, 1, 1, 4), iv(1, 4, 1, 2), iv(0, 1, 1, 2)),
            (iv(0, 1, 1, 2), iv(1, 2, 1, 1), iv(0, 1, 1, 1)),
            (iv(5, 8, 3, 4), iv(1, 8, 1, 4), iv(0, 1, 1, 4)),
        ];
        for (i, j, expected_k) in cases {
            let (c, k) = conjugate_two_flips_to_one(&i, &j).unwrap();
            assert_eq!(k, expected_k);
            let feats = c.features();
            assert!(feats.unit_slopes);
            assert_eq!(
                feats.orientation,
                crate::pwmap::OrientationProfile::AllPreserving
            );
            let two = PwMap::flip(&i).compose(&PwMap::flip(&j));
            let conj = c.compose(&two).compose(&c.inverse());
            assert!(conj.eq_mod_finperm(&PwMap::flip(&k)), "i={i} j={j}");
        }

        assert!(matches!(
            conjugate_two_flips_to_one(&iv(0, 1, 1, 2), &iv(1, 4, 3, 4)),
            Err(Error::OverlappingIntervals)
        ));
    }

    #[test]
    fn flip_perm_rc_parity_bookkeeping() {
        for h in [h3(), half_swap(), rotation_third(), PwMap::flip(&iv(1, 4, 1, 2))] {
            let d = decompose_flip_perm_rc(&h).unwrap();
            assert_eq!(
                signature(&h),
                SignBit::from_parity(d.flips.len()) + finperm_sign(&d.perm)
            );
        }
    }
}
