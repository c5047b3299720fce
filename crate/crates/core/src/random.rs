//! Seeded random elements of the various subgroup classes.
//!
//! Generation is deterministic in `(profile, seed)` and always produces a
//! valid canonical [`PwMap`] satisfying the requested class predicate; the
//! property suites are built on top of this.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::interval::{Interval, Partition};
use crate::perm::FinPerm;
use crate::pwmap::{Orientation, OrientationProfile, PwMap};
use crate::rat::{rat, Rat, RatPoint};

/// Element classes the generator can target.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ElementClass {
    /// Piecewise isometries, orientation mixed freely.
    Iet,
    /// Orientation-preserving piecewise isometries.
    IetPlus,
    /// Right-continuous orientation-preserving piecewise isometries.
    IetPlusRc,
    /// General piecewise-affine elements (the whole carrier).
    PAff,
    /// Finitely supported permutations.
    FinPerm,
    /// Piecewise-affine orientation-preserving homeomorphisms of `[0, 1)`.
    HomeoPlus,
}

impl ElementClass {
    /// The defining predicate of the class, in terms of the feature report.
    pub fn matches(&self, h: &PwMap) -> bool {
        let f = h.features();
        match self {
            ElementClass::Iet => f.unit_slopes,
            ElementClass::IetPlus => {
                f.unit_slopes && f.orientation == OrientationProfile::AllPreserving
            }
            ElementClass::IetPlusRc => {
                f.unit_slopes
                    && f.orientation == OrientationProfile::AllPreserving
                    && f.right_continuous
            }
            ElementClass::PAff => true,
            ElementClass::FinPerm => f.in_sfin,
            ElementClass::HomeoPlus => {
                f.continuous && f.orientation == OrientationProfile::AllPreserving
            }
        }
    }
}

/// Shape constraints for [`random_element`].
#[derive(Clone, Debug)]
pub struct RandomProfile {
    pub class: ElementClass,
    /// Upper bound on the number of structural pieces drawn.
    pub max_pieces: usize,
    /// Breakpoints and lengths are drawn with denominators up to this bound.
    pub denominator_bound: u64,
}

impl RandomProfile {
    pub fn new(class: ElementClass, max_pieces: usize, denominator_bound: u64) -> Self {
        assert!(max_pieces >= 1, "need at least one piece");
        assert!(denominator_bound >= 2, "need denominators of at least 2");
        RandomProfile {
            class,
            max_pieces,
            denominator_bound,
        }
    }
}

fn random_unit_rat(rng: &mut ChaCha8Rng, bound: u64) -> Rat {
    let q = rng.random_range(2..=bound);
    let p = rng.random_range(1..q);
    rat(p as i64, q as i64)
}

/// Up to `count` distinct cut points in `(0, 1)`; may return fewer when the
/// denominator bound leaves too few distinct values.
fn random_cuts(rng: &mut ChaCha8Rng, count: usize, bound: u64) -> BTreeSet<RatPoint> {
    let mut cuts = BTreeSet::new();
    let mut attempts = 0;
    while cuts.len() < count && attempts < 64 * (count + 1) {
        attempts += 1;
        let v = random_unit_rat(rng, bound);
        cuts.insert(RatPoint::new(v).expect("cut lies in (0, 1)"));
    }
    cuts
}

fn shuffle<T>(rng: &mut ChaCha8Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
}

fn random_arrangement(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut a: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut a);
    a
}

fn random_orientation(rng: &mut ChaCha8Rng) -> Orientation {
    if rng.random_range(0..2) == 0 {
        Orientation::Preserving
    } else {
        Orientation::Reversing
    }
}

/// Builds the map sending each source interval onto its destination
/// interval affinely with the given orientation, with explicit breakpoint
/// images.
fn assemble(
    src: &[Interval],
    dest: &[Interval],
    orientations: &[Orientation],
    points: Vec<(RatPoint, RatPoint)>,
) -> PwMap {
    let pieces = src
        .iter()
        .zip(dest)
        .zip(orientations)
        .map(|((s, d), o)| {
            let magnitude = d.len() / s.len();
            let (slope, offset) = match o {
                Orientation::Preserving => {
                    let offset = d.left().value() - &magnitude * s.left().value();
                    (magnitude, offset)
                }
                Orientation::Reversing => {
                    let offset = d.left().value() + &magnitude * s.right();
                    (-magnitude, offset)
                }
            };
            (s.clone(), slope, offset)
        })
        .collect();
    PwMap::build(pieces, points).expect("structured random data is valid")
}

/// Destination interval of each source index under an arrangement of the
/// target partition's cells (`arrangement[t]` = source placed `t`-th).
fn destinations(target: &Partition, arrangement: &[usize]) -> Vec<Interval> {
    let mut dest: Vec<Option<Interval>> = alloc::vec![None; arrangement.len()];
    for (t, &j) in arrangement.iter().enumerate() {
        dest[j] = Some(target.intervals()[t].clone());
    }
    dest.into_iter()
        .map(|d| d.expect("arrangement is onto"))
        .collect()
}

fn rc_points(src: &[Interval], dest: &[Interval]) -> Vec<(RatPoint, RatPoint)> {
    src.iter()
        .zip(dest)
        .map(|(s, d)| (s.left().clone(), d.left().clone()))
        .collect()
}

fn shuffled_points(
    rng: &mut ChaCha8Rng,
    src: &[Interval],
    dest: &[Interval],
) -> Vec<(RatPoint, RatPoint)> {
    let mut targets: Vec<RatPoint> = dest.iter().map(|d| d.left().clone()).collect();
    shuffle(rng, &mut targets);
    src.iter().map(|s| s.left().clone()).zip(targets).collect()
}

fn truncate_to(cuts: &mut BTreeSet<RatPoint>, k: usize) {
    while cuts.len() > k {
        let last = cuts.iter().next_back().cloned().expect("nonempty");
        cuts.remove(&last);
    }
}

/// A deterministic pseudorandom element of the requested class.
pub fn random_element(profile: &RandomProfile, seed: u64) -> PwMap {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let bound = profile.denominator_bound;
    let n_target = rng.random_range(1..=profile.max_pieces);

    let result = match profile.class {
        ElementClass::FinPerm => {
            let mut support: Vec<RatPoint> = random_cuts(rng, n_target.saturating_sub(1), bound)
                .into_iter()
                .collect();
            if rng.random_range(0..4) == 0 {
                support.insert(0, RatPoint::zero());
            }
            let mut images = support.clone();
            shuffle(rng, &mut images);
            let perm = FinPerm::from_images(support.into_iter().zip(images))
                .expect("shuffled support is a bijection");
            PwMap::from_finperm(&perm)
        }
        ElementClass::Iet | ElementClass::IetPlus | ElementClass::IetPlusRc => {
            let source = Partition::from_breakpoints(random_cuts(rng, n_target - 1, bound));
            let n = source.len();
            let src: Vec<Interval> = source.intervals().to_vec();
            let arrangement = random_arrangement(rng, n);
            // The arrival tiling of an isometric exchange reuses the source
            // lengths in arrangement order.
            let mut cursor = Rat::one() - Rat::one();
            let mut cells = Vec::with_capacity(n);
            for &j in &arrangement {
                let next = &cursor + src[j].len();
                cells.push(Interval::from_rats(cursor.clone(), next.clone()).expect("cell"));
                cursor = next;
            }
            let target = Partition::from_intervals(cells).expect("cells tile");
            let dest = destinations(&target, &arrangement);
            let orientations: Vec<Orientation> = (0..n)
                .map(|_| match profile.class {
                    ElementClass::Iet => random_orientation(rng),
                    _ => Orientation::Preserving,
                })
                .collect();
            let points = if profile.class == ElementClass::IetPlusRc {
                rc_points(&src, &dest)
            } else {
                shuffled_points(rng, &src, &dest)
            };
            assemble(&src, &dest, &orientations, points)
        }
        ElementClass::PAff | ElementClass::HomeoPlus => {
            let mut a = random_cuts(rng, n_target - 1, bound);
            let mut b = random_cuts(rng, n_target - 1, bound);
            let k = a.len().min(b.len());
            truncate_to(&mut a, k);
            truncate_to(&mut b, k);
            let source = Partition::from_breakpoints(a);
            let target = Partition::from_breakpoints(b);
            let n = source.len();
            let src: Vec<Interval> = source.intervals().to_vec();
            if profile.class == ElementClass::HomeoPlus {
                let arrangement: Vec<usize> = (0..n).collect();
                let dest = destinations(&target, &arrangement);
                let orientations = alloc::vec![Orientation::Preserving; n];
                let points = rc_points(&src, &dest);
                assemble(&src, &dest, &orientations, points)
            } else {
                let arrangement = random_arrangement(rng, n);
                let dest = destinations(&target, &arrangement);
                let orientations: Vec<Orientation> =
                    (0..n).map(|_| random_orientation(rng)).collect();
                let points = shuffled_points(rng, &src, &dest);
                assemble(&src, &dest, &orientations, points)
            }
        }
    };
    debug_assert!(profile.class.matches(&result));
    result
}
