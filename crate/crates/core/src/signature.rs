//! The signature homomorphism to `Z/2Z`.
//!
//! For a partition `P` associated with `h`, the signature of `h` about `P`
//! adds the flip number (how many intervals of `P` the map reverses) to the
//! parity of the right-continuity defect permutation, modulo 2. The value
//! does not depend on the choice of associated partition and defines a group
//! homomorphism extending the classical permutation signature.

use core::fmt;
use core::ops::{Add, AddAssign};

use crate::interval::Partition;
use crate::perm::FinPerm;
use crate::pwmap::PwMap;
use crate::{Error, Result};

/// An element of `Z/2Z`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignBit(bool);

impl SignBit {
    pub const EVEN: SignBit = SignBit(false);
    pub const ODD: SignBit = SignBit(true);

    pub fn from_parity(n: usize) -> SignBit {
        SignBit(n % 2 == 1)
    }

    pub fn is_even(self) -> bool {
        !self.0
    }

    pub fn is_odd(self) -> bool {
        self.0
    }

    /// 0 or 1.
    pub fn bit(self) -> u8 {
        u8::from(self.0)
    }
}

impl Add for SignBit {
    type Output = SignBit;

    // Addition mod 2 is xor on the bit.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: SignBit) -> SignBit {
        SignBit(self.0 ^ rhs.0)
    }
}

impl AddAssign for SignBit {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: SignBit) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for SignBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// The number of intervals of `p` on which `h` is order-reversing.
///
/// Returned as a raw count; the signature reduces it modulo 2.
pub fn flip_number(h: &PwMap, p: &Partition) -> Result<usize> {
    if !h.is_associated(p) {
        return Err(Error::NotAssociated);
    }
    Ok(p.intervals().iter().filter(|iv| h.reverses_on(iv)).count())
}

/// The right-continuity defect of `h` about `p`: the finitely supported
/// permutation sending the image of each interval's left endpoint to the
/// left endpoint of that interval's image interior. It is the identity
/// exactly when `h` is "pseudo right continuous" for `p`.
pub fn sigma_default(h: &PwMap, p: &Partition) -> Result<FinPerm> {
    if !h.is_associated(p) {
        return Err(Error::NotAssociated);
    }
    let pairs = p.intervals().iter().map(|iv| {
        let moved = h.apply(iv.left());
        let target = h.image_hull(iv).left().clone();
        (moved, target)
    });
    Ok(FinPerm::from_images(pairs)
        .expect("endpoint images and image-interval endpoints coincide as sets"))
}

/// Parity of a finitely supported permutation via its cycle type.
pub fn finperm_sign(t: &FinPerm) -> SignBit {
    let transpositions: usize = t.cycles().iter().map(|c| c.len() - 1).sum();
    SignBit::from_parity(transpositions)
}

/// Parity of a finitely supported permutation by counting inversions over
/// its sorted support. Independent of [`finperm_sign`]; the two are
/// cross-checked in the test suites.
pub fn finperm_sign_by_inversions(t: &FinPerm) -> SignBit {
    let support: alloc::vec::Vec<_> = t.support().collect();
    let mut inversions = 0usize;
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            if t.apply(support[i]) > t.apply(support[j]) {
                inversions += 1;
            }
        }
    }
    SignBit::from_parity(inversions)
}

/// The signature of `h` computed about the associated partition `p`.
pub fn signature_at(h: &PwMap, p: &Partition) -> Result<SignBit> {
    let flips = flip_number(h, p)?;
    let defect = sigma_default(h, p)?;
    Ok(SignBit::from_parity(flips) + finperm_sign(&defect))
}

/// The signature of `h` (computed about the minimal partition; by partition
/// independence any associated partition gives the same value).
pub fn signature(h: &PwMap) -> SignBit {
    signature_at(h, &h.minimal_partition()).expect("minimal partition is associated")
}
