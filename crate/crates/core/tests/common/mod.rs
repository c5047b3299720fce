//! Shared helpers for the seeded property suites.
// Not every test binary uses every helper.
#![allow(dead_code)]

use flipsig_core::{
    rat, ElementClass, Interval, Partition, PwMap, RandomProfile, Rat, RatPoint,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn profile(class: ElementClass) -> RandomProfile {
    RandomProfile::new(class, 8, 96)
}

pub fn sample(class: ElementClass, count: u64, seed0: u64) -> Vec<PwMap> {
    let p = profile(class);
    (0..count)
        .map(|k| flipsig_core::random::random_element(&p, seed0 + k))
        .collect()
}

/// Elements drawn alternately from the isometric and general affine classes.
pub fn mixed_sample(count: u64, seed0: u64) -> Vec<PwMap> {
    let iet = profile(ElementClass::Iet);
    let paff = profile(ElementClass::PAff);
    (0..count)
        .map(|k| {
            let p = if k % 2 == 0 { &iet } else { &paff };
            flipsig_core::random::random_element(p, seed0 + k)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit_rat(rng: &mut ChaCha8Rng, bound: u64) -> Rat {
    let q = rng.random_range(2..=bound);
    let p = rng.random_range(1..q);
    rat(p as i64, q as i64)
}

/// A random point strictly inside `iv`.
pub fn random_interior_point(rng: &mut ChaCha8Rng, iv: &Interval) -> RatPoint {
    let t = random_unit_rat(rng, 64);
    RatPoint::new(iv.left().value() + iv.len() * t).expect("interior point")
}

/// A random subinterval of `[lo, hi)` with rational endpoints.
pub fn random_subinterval(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat) -> Interval {
    loop {
        let a = lo + (hi - lo) * random_unit_rat(rng, 48);
        let b = lo + (hi - lo) * random_unit_rat(rng, 48);
        if a < b {
            return Interval::from_rats(a, b).expect("nonempty");
        }
        if b < a {
            return Interval::from_rats(b, a).expect("nonempty");
        }
    }
}

/// A random chain of `splits` single-interval refinements starting from `p`.
pub fn refinement_chain(
    rng: &mut ChaCha8Rng,
    p: &Partition,
    splits: usize,
) -> Vec<Partition> {
    let mut chain = vec![p.clone()];
    for _ in 0..splits {
        let current = chain.last().expect("nonempty");
        let idx = rng.random_range(0..current.len());
        let cell = &current.intervals()[idx];
        let cut = random_interior_point(rng, cell);
        chain.push(current.with_breakpoint(cut));
    }
    chain
}
