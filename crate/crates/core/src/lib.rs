//! Exact arithmetic for the group of piecewise-affine bijections of the
//! half-open unit interval `[0, 1)` that are continuous outside a finite set.
//!
//! Elements are represented canonically by [`PwMap`]: finitely many affine
//! pieces whose interiors tile `(0, 1)` together with explicit images for the
//! breakpoints. All coordinates, slopes and offsets are arbitrary-precision
//! rationals, so every group identity checked by this crate is checked
//! exactly, never numerically.
//!
//! On top of the group engine the crate provides:
//!
//! * [`signature`] — the `Z/2Z`-valued signature homomorphism built from the
//!   flip number of a partition and the parity of the right-continuity
//!   defect permutation,
//! * [`decompose`] — constructive factorizations into flips, finitely
//!   supported permutations, right-continuous exchanges and piecewise-affine
//!   homeomorphisms,
//! * [`subgroups`] — the five-level normal-subgroup classifier and the
//!   witness constructions behind the simplicity and normalizer arguments,
//! * [`random`] — seeded generators for the different element classes, used
//!   by the property suites.
//!
//! The crate is `no_std` (with `alloc`); IO, parsing of element files and the
//! command line live in the companion `flipsig-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decompose;
pub mod error;
pub mod interval;
pub mod perm;
pub mod pwmap;
pub mod random;
pub mod rat;
pub mod signature;
pub mod subgroups;

pub use error::Error;
pub use interval::{Interval, Partition};
pub use perm::FinPerm;
pub use pwmap::{AffinePiece, FeatureReport, Orientation, OrientationProfile, PwMap};
pub use random::{ElementClass, RandomProfile};
pub use rat::{format_rat, parse_rat, rat, Rat, RatPoint};
pub use signature::SignBit;

pub type Result<T> = core::result::Result<T, Error>;

#[cfg(test)]
mod concurrency_tests {
    // All values are immutable after construction and all operations are
    // pure, so everything can be shared and sent between threads.
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<crate::RatPoint>();
        assert_send_sync::<crate::Interval>();
        assert_send_sync::<crate::Partition>();
        assert_send_sync::<crate::FinPerm>();
        assert_send_sync::<crate::PwMap>();
        assert_send_sync::<crate::Error>();
    }
}
