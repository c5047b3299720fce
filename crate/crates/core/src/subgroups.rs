//! The five-level normal-subgroup classifier and the constructive witnesses
//! behind the simplicity and normalizer arguments.
//!
//! For a hat-group over a simple quotient the normal subgroups are the
//! trivial group, the even finitely supported permutations, all finitely
//! supported permutations, the kernel of the signature, and everything.
//! [`classify_normal`] names the smallest of these containing a given
//! element. The witness operations re-verify their defining property before
//! returning, so every successful call is a checked instance of the
//! underlying argument.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::decompose::decompose_flip_perm_rc;
use crate::interval::Interval;
use crate::pwmap::{AffinePiece, OrientationProfile, PwMap};
use crate::rat::{rat, Rat};
use crate::signature::{finperm_sign, signature};
use crate::{Error, Result};

/// The smallest normal subgroup of the five-element lattice containing an
/// element. Odd finitely supported permutations sit in `SymmetricFin` and
/// never in the signature kernel, so the two incomparable levels cannot
/// tie.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NormalLevel {
    Trivial,
    AlternatingFin,
    SymmetricFin,
    SignatureKernel,
    Full,
}

impl fmt::Display for NormalLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalLevel::Trivial => "trivial",
            NormalLevel::AlternatingFin => "A_fin",
            NormalLevel::SymmetricFin => "S_fin",
            NormalLevel::SignatureKernel => "Ker_epsilon",
            NormalLevel::Full => "full",
        })
    }
}

pub fn classify_normal(h: &PwMap) -> NormalLevel {
    if h.is_identity() {
        return NormalLevel::Trivial;
    }
    if let Some(perm) = h.to_finperm() {
        return if finperm_sign(&perm).is_odd() {
            NormalLevel::SymmetricFin
        } else {
            NormalLevel::AlternatingFin
        };
    }
    if signature(h).is_even() {
        NormalLevel::SignatureKernel
    } else {
        NormalLevel::Full
    }
}

/// Largest power of one half that is at most `x` (for `x > 0`).
fn dyadic_at_most(x: &Rat) -> Rat {
    let mut w = Rat::one();
    while &w > x {
        w /= rat(2, 1);
    }
    w
}

/// Two disjoint intervals leave room iff their union misses a nonempty
/// subinterval of `[0, 1)`.
fn union_leaves_room(a: &Interval, b: &Interval) -> bool {
    let (first, second) = if a.left() <= b.left() { (a, b) } else { (b, a) };
    first.left().value().is_positive()
        || first.right() < second.left().value()
        || !second.right().is_one()
}

/// Witness for the simplicity argument: an interval displaced off itself by
/// `g`, together with the commutator of `g` with that interval's flip,
/// which is a product of two flips modulo a finite permutation.
#[derive(Clone, Debug)]
pub struct SimplicityWitness {
    /// The displaced interval, contained in one affine piece of `g`.
    pub interval: Interval,
    /// The hull of the image of its interior, disjoint from `interval`.
    pub moved_hull: Interval,
    /// `g ∘ flip(interval) ∘ g⁻¹ ∘ flip(interval)`.
    pub commutator: PwMap,
}

/// Finds, for `g` outside the finitely supported permutations, an interval
/// `i` inside one affine piece with `g(i°)` disjoint from `i` and their
/// union missing part of `[0, 1)`; checks exactly that the commutator of
/// `g` with the `i`-flip is `flip(hull(g(i°))) ∘ flip(i)` modulo a finite
/// permutation.
pub fn simplicity_witness(g: &PwMap) -> Result<SimplicityWitness> {
    if g.is_in_sfin() {
        return Err(Error::FinitelySupported);
    }
    let g_inv = g.inverse();
    for piece in g.pieces() {
        if piece.slope().is_one() && piece.offset().is_zero() {
            continue;
        }
        let len = piece.source().len();
        let mut width = dyadic_at_most(&(len / rat(8, 1)));
        for _ in 0..96 {
            let mut u = piece.source().left().value().clone();
            loop {
                let end = &u + &width;
                if end > *piece.source().right() {
                    break;
                }
                let cand = Interval::from_rats(u, end.clone()).expect("candidate inside piece");
                if let Some(witness) = displaced_commutator(g, &g_inv, cand) {
                    return Ok(witness);
                }
                u = end;
            }
            width /= rat(2, 1);
        }
    }
    unreachable!("an element outside S_fin displaces some interval off itself")
}

fn displaced_commutator(g: &PwMap, g_inv: &PwMap, cand: Interval) -> Option<SimplicityWitness> {
    let hull = g.image_hull(&cand);
    if !cand.is_disjoint_from(&hull) || !union_leaves_room(&cand, &hull) {
        return None;
    }
    let flip = PwMap::flip(&cand);
    let commutator = g.compose(&flip).compose(g_inv).compose(&flip);
    let expected = PwMap::flip(&hull).compose(&flip);
    if !commutator.eq_mod_finperm(&expected) {
        return None;
    }
    Some(SimplicityWitness {
        interval: cand,
        moved_hull: hull,
        commutator,
    })
}

fn in_rc_plus(h: &PwMap) -> bool {
    let f = h.features();
    f.right_continuous && f.orientation == OrientationProfile::AllPreserving
}

/// For a piecewise isometry outside the right-continuous order-preserving
/// subgroup, produces a member `f` of that subgroup whose conjugate
/// `g ∘ f ∘ g⁻¹` leaves it again — the normalizer obstruction.
pub fn normalizer_witness_rc(g: &PwMap) -> Result<PwMap> {
    let feats = g.features();
    if !feats.unit_slopes {
        return Err(Error::NonUnitSlopes);
    }
    if in_rc_plus(g) {
        return Err(Error::AlreadyRcPositive);
    }

    let f = if feats.orientation == OrientationProfile::AllPreserving {
        // Order-preserving but not right-continuous: split off the finite
        // defect permutation and swap two equal blocks meeting at one of
        // its support points, keeping the left block clear of the support.
        let d = decompose_flip_perm_rc(g).expect("unit slopes");
        let defect = d.perm;
        let rc_part = d.rc;
        let x = defect
            .support()
            .find(|p| !p.is_zero())
            .cloned()
            .expect("a finite permutation moves a positive point");
        let xv = x.value().clone();
        let headroom = Rat::one() - &xv;
        let cap = if xv <= headroom { xv.clone() } else { headroom };
        let mut width = dyadic_at_most(&cap);
        loop {
            let block = Interval::from_rats(&xv - &width, xv.clone()).expect("left block");
            if defect.support().all(|s| !block.contains(s)) {
                break;
            }
            width /= rat(2, 1);
        }
        let left = Interval::from_rats(&xv - &width, xv.clone()).expect("left block");
        let right = Interval::from_rats(xv.clone(), &xv + &width).expect("right block");
        let swap = PwMap::swap_adjacent(&left, &right).expect("consecutive blocks");
        rc_part.inverse().compose(&swap).compose(&rc_part)
    } else {
        // A reversed piece: swap two half blocks around its midpoint; the
        // conjugate then fixes a point that right-continuity would move.
        let piece = g
            .pieces()
            .iter()
            .find(|p| p.is_reversing())
            .expect("non-preserving profile has a reversed piece");
        let width = dyadic_at_most(&(piece.source().len() / rat(8, 1)));
        let mid = piece.source().midpoint();
        let left = Interval::from_rats(&mid - &width, mid.clone()).expect("left block");
        let right = Interval::from_rats(mid.clone(), &mid + &width).expect("right block");
        PwMap::swap_adjacent(&left, &right).expect("consecutive blocks")
    };

    debug_assert!(in_rc_plus(&f));
    let conjugate = g.compose(&f).compose(&g.inverse());
    assert!(
        !in_rc_plus(&conjugate),
        "conjugate of the witness stayed right-continuous order-preserving"
    );
    Ok(f)
}

fn exchange_blocks(a: &Interval, b: &Interval) -> PwMap {
    debug_assert!(a.len() == b.len() && a.is_disjoint_from(b));
    let (p, q) = if a.left() <= b.left() { (a, b) } else { (b, a) };
    let mut blocks = Vec::new();
    if !p.left().is_zero() {
        blocks.push((
            Interval::from_rats(Rat::zero(), p.left().value().clone()).expect("prefix"),
            Rat::zero(),
        ));
    }
    blocks.push((p.clone(), q.left().value().clone()));
    if p.right() < q.left().value() {
        blocks.push((
            Interval::from_rats(p.right().clone(), q.left().value().clone()).expect("middle"),
            p.right().clone(),
        ));
    }
    blocks.push((q.clone(), p.left().value().clone()));
    if !q.right().is_one() {
        blocks.push((
            Interval::from_rats(q.right().clone(), Rat::one()).expect("suffix"),
            q.right().clone(),
        ));
    }
    PwMap::rc_rearrangement(blocks).expect("exchanged blocks tile")
}

fn equal_width_slots(preserved: &[&AffinePiece], width: &Rat, want: usize) -> Vec<Interval> {
    let mut out = Vec::new();
    for piece in preserved {
        let left = piece.source().left().value();
        let mut k: i64 = 1;
        loop {
            let start = left + rat(k, 1) * width;
            let end = &start + width;
            if end > *piece.source().right() {
                break;
            }
            out.push(Interval::from_rats(start, end).expect("slot"));
            if out.len() == want {
                return out;
            }
            k += 1;
        }
    }
    out
}

/// For a piecewise isometry with mixed orientation, produces an
/// order-preserving piecewise isometry `f` outside the finitely supported
/// permutations whose conjugate `g ∘ f ∘ g⁻¹` has a reversed piece — so the
/// conjugate leaves the order-preserving subgroup.
///
/// Four equal-width intervals are chosen inside one reversed and inside
/// preserved pieces of `g⁻¹`; `f` exchanges their `g⁻¹`-images pairwise.
pub fn normalizer_witness_orientation(g: &PwMap) -> Result<PwMap> {
    let feats = g.features();
    if !feats.unit_slopes {
        return Err(Error::NonUnitSlopes);
    }
    if feats.orientation != OrientationProfile::Mixed {
        return Err(Error::NotMixedOrientation);
    }

    let host = g.inverse();
    let reversed = host
        .pieces()
        .iter()
        .find(|p| p.is_reversing())
        .expect("mixed profile");
    let preserved: Vec<&AffinePiece> = host
        .pieces()
        .iter()
        .filter(|p| !p.is_reversing())
        .collect();

    let mut width = dyadic_at_most(&(reversed.source().len() / rat(8, 1)));
    let slots = loop {
        let slots = equal_width_slots(&preserved, &width, 3);
        if slots.len() == 3 {
            break slots;
        }
        width /= rat(2, 1);
    };
    let rev_left = reversed.source().left().value();
    let moved = Interval::from_rats(rev_left + &width, rev_left + &width + &width)
        .expect("slot inside the reversed piece");

    let image_a = host.image_hull(&moved);
    let image_b = host.image_hull(&slots[0]);
    let image_c = host.image_hull(&slots[1]);
    let image_d = host.image_hull(&slots[2]);
    let f = exchange_blocks(&image_a, &image_b).compose(&exchange_blocks(&image_c, &image_d));

    let f_feats = f.features();
    debug_assert!(
        f_feats.unit_slopes
            && f_feats.orientation == OrientationProfile::AllPreserving
            && !f_feats.in_sfin
    );
    let conjugate = g.compose(&f).compose(&g.inverse());
    assert!(
        conjugate.features().orientation != OrientationProfile::AllPreserving,
        "conjugate of the witness stayed order-preserving"
    );
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::FinPerm;
    use crate::pwmap::Orientation;
    use crate::rat::RatPoint;
    use crate::signature::SignBit;

    fn pt(n: i64, d: i64) -> RatPoint {
        RatPoint::from_ints(n, d).unwrap()
    }

    fn iv(an: i64, ad: i64, bn: i64, bd: i64) -> Interval {
        Interval::from_ints(an, ad, bn, bd).unwrap()
    }

    fn rotation_third() -> PwMap {
        PwMap::from_iet(
            &[rat(2, 3), rat(1, 3)],
            &[1, 0],
            &[Orientation::Preserving, Orientation::Preserving],
        )
        .unwrap()
    }

    fn half_swap() -> PwMap {
        PwMap::swap_adjacent(&iv(0, 1, 1, 2), &iv(1, 2, 1, 1)).unwrap()
    }

    #[test]
    fn classifier_hits_all_five_levels() {
        assert_eq!(classify_normal(&PwMap::identity()), NormalLevel::Trivial);

        let three_cycle = FinPerm::from_cycle(&[pt(0, 1), pt(1, 3), pt(2, 3)]).unwrap();
        assert_eq!(
            classify_normal(&PwMap::from_finperm(&three_cycle)),
            NormalLevel::AlternatingFin
        );

        let swap = FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap();
        assert_eq!(
            classify_normal(&PwMap::from_finperm(&swap)),
            NormalLevel::SymmetricFin
        );

        assert_eq!(classify_normal(&rotation_third()), NormalLevel::SignatureKernel);
        assert_eq!(
            classify_normal(&PwMap::flip(&iv(1, 4, 1, 2))),
            NormalLevel::Full
        );
    }

    #[test]
    fn classifier_is_inversion_invariant() {
        for h in [
            PwMap::identity(),
            rotation_third(),
            half_swap(),
            PwMap::flip(&iv(1, 4, 1, 2)),
            PwMap::from_finperm(&FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap()),
        ] {
            assert_eq!(classify_normal(&h), classify_normal(&h.inverse()));
        }
    }

    #[test]
    fn simplicity_witness_examples() {
        for g in [
            rotation_third(),
            half_swap(),
            PwMap::flip(&iv(0, 1, 1, 1)),
            PwMap::flip(&iv(1, 4, 1, 2)),
        ] {
            let w = simplicity_witness(&g).unwrap();
            assert!(w.interval.is_disjoint_from(&w.moved_hull));
            assert!(union_leaves_room(&w.interval, &w.moved_hull));
            let expected = PwMap::flip(&w.moved_hull).compose(&PwMap::flip(&w.interval));
            assert!(w.commutator.eq_mod_finperm(&expected));
            assert_eq!(signature(&w.commutator), SignBit::EVEN);
        }

        assert!(matches!(
            simplicity_witness(&PwMap::identity()),
            Err(Error::FinitelySupported)
        ));
        let t = PwMap::from_finperm(&FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap());
        assert!(matches!(simplicity_witness(&t), Err(Error::FinitelySupported)));
    }

    #[test]
    fn two_flip_identity_for_hand_picked_intervals() {
        // The displaced-interval commutator identity, checked on the same
        // intervals one would pick by hand.
        let cases = [
            (rotation_third(), iv(0, 1, 1, 4), iv(1, 3, 7, 12)),
            (half_swap(), iv(0, 1, 1, 4), iv(1, 2, 3, 4)),
            (PwMap::flip(&iv(0, 1, 1, 1)), iv(0, 1, 1, 4), iv(3, 4, 1, 1)),
        ];
        for (g, interval, hull) in cases {
            assert_eq!(g.image_hull(&interval), hull);
            let flip = PwMap::flip(&interval);
            let commutator = g.compose(&flip).compose(&g.inverse()).compose(&flip);
            let expected = PwMap::flip(&hull).compose(&flip);
            assert!(commutator.eq_mod_finperm(&expected));
        }
    }

    #[test]
    fn rc_witness_for_a_transposition_matches_the_expected_swap() {
        let g = PwMap::from_finperm(&FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap());
        let f = normalizer_witness_rc(&g).unwrap();
        assert_eq!(
            f,
            PwMap::swap_adjacent(&iv(1, 4, 1, 2), &iv(1, 2, 3, 4)).unwrap()
        );
        let conj = g.compose(&f).compose(&g.inverse());
        assert!(!conj.features().right_continuous);
    }

    #[test]
    fn rc_witness_on_reversed_and_mixed_inputs() {
        for g in [
            PwMap::flip(&iv(0, 1, 1, 1)),
            PwMap::flip(&iv(1, 4, 1, 2)),
            PwMap::from_finperm(&FinPerm::transposition(pt(0, 1), pt(1, 2)).unwrap())
                .compose(&half_swap()),
        ] {
            let f = normalizer_witness_rc(&g).unwrap();
            assert!(in_rc_plus(&f));
            let conj = g.compose(&f).compose(&g.inverse());
            assert!(!in_rc_plus(&conj));
        }

        assert!(matches!(
            normalizer_witness_rc(&half_swap()),
            Err(Error::AlreadyRcPositive)
        ));
        assert!(matches!(
            normalizer_witness_rc(&PwMap::identity()),
            Err(Error::AlreadyRcPositive)
        ));
    }

    #[test]
    fn orientation_witness_example() {
        let g = PwMap::flip(&iv(0, 1, 1, 2));
        let f = normalizer_witness_orientation(&g).unwrap();
        let feats = f.features();
        assert!(feats.unit_slopes && !feats.in_sfin);
        assert_eq!(feats.orientation, OrientationProfile::AllPreserving);
        let conj = g.compose(&f).compose(&g.inverse());
        assert_ne!(conj.features().orientation, OrientationProfile::AllPreserving);

        // The same obstruction with the four blocks picked by hand.
        let by_hand = exchange_blocks(&iv(3, 8, 1, 2), &iv(1, 2, 5, 8))
            .compose(&exchange_blocks(&iv(5, 8, 3, 4), &iv(3, 4, 7, 8)));
        let conj = g.compose(&by_hand).compose(&g.inverse());
        assert_ne!(conj.features().orientation, OrientationProfile::AllPreserving);

        assert!(matches!(
            normalizer_witness_orientation(&rotation_third()),
            Err(Error::NotMixedOrientation)
        ));
        assert!(matches!(
            normalizer_witness_orientation(&PwMap::flip(&iv(0, 1, 1, 1))),
            Err(Error::NotMixedOrientation)
        ));
    }
}
