//! Canonical piecewise-affine bijections of `[0, 1)`.
//!
//! A [`PwMap`] is stored as affine pieces whose sources tile `[0, 1)` plus an
//! explicit image for every piece left endpoint. Validity means the interior
//! images tile `(0, 1)` and the breakpoint images are exactly the uncovered
//! points, which is equivalent to global bijectivity. The canonical form
//! merges adjacent pieces whenever one affine map covers both pieces *and*
//! the shared endpoint's image agrees with it, so equality of canonical
//! forms is pointwise equality of maps.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::interval::{Interval, Partition};
use crate::perm::FinPerm;
use crate::rat::{format_rat, rat, Rat, RatPoint};
use crate::{Error, Result};

/// Orientation of a single piece.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// Orientation profile of a whole element.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrientationProfile {
    AllPreserving,
    AllReversing,
    Mixed,
}

/// One affine piece: `x -> slope * x + offset` on the interior of `source`.
#[derive(Clone, PartialEq, Eq)]
pub struct AffinePiece {
    source: Interval,
    slope: Rat,
    offset: Rat,
}

impl AffinePiece {
    pub fn source(&self) -> &Interval {
        &self.source
    }

    pub fn slope(&self) -> &Rat {
        &self.slope
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn is_reversing(&self) -> bool {
        self.slope.is_negative()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.offset
    }

    /// The open image of the source interior, as a sorted pair `(lo, hi)`.
    pub fn image_interior(&self) -> (Rat, Rat) {
        let a = self.eval(self.source.left().value());
        let b = self.eval(self.source.right());
        if self.slope.is_positive() {
            (a, b)
        } else {
            (b, a)
        }
    }
}

impl fmt::Debug for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}x + {}",
            self.source,
            format_rat(&self.slope),
            format_rat(&self.offset)
        )
    }
}

/// Structural classification of an element, see [`PwMap::features`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureReport {
    /// Identity outside a finite set (a finitely supported permutation).
    pub in_sfin: bool,
    /// Every breakpoint image equals the right limit there.
    pub right_continuous: bool,
    /// Right-continuous and agreeing with the left limit at every interior
    /// breakpoint, i.e. a continuous map of `[0, 1)`.
    pub continuous: bool,
    pub orientation: OrientationProfile,
    /// All slopes are `+1` or `-1` (a piecewise isometry).
    pub unit_slopes: bool,
    pub piece_count: usize,
}

/// A piecewise-affine bijection of `[0, 1)`, continuous outside a finite
/// set, in canonical (minimal-piece) form.
#[derive(Clone, PartialEq, Eq)]
pub struct PwMap {
    pieces: Vec<AffinePiece>,
    point_images: BTreeMap<RatPoint, RatPoint>,
}

impl PwMap {
    /// Validates and canonicalizes raw data: affine pieces as
    /// `(source, slope, offset)` plus an image for every source left
    /// endpoint.
    pub fn build(
        pieces: Vec<(Interval, Rat, Rat)>,
        points: Vec<(RatPoint, RatPoint)>,
    ) -> Result<PwMap> {
        let mut pieces: Vec<AffinePiece> = pieces
            .into_iter()
            .map(|(source, slope, offset)| AffinePiece {
                source,
                slope,
                offset,
            })
            .collect();
        pieces.sort_by(|a, b| a.source.left().cmp(b.source.left()));

        if pieces.is_empty() {
            return Err(Error::BadTiling("no pieces".into()));
        }
        if !pieces[0].source.left().is_zero() {
            return Err(Error::BadTiling(format!(
                "first piece starts at {}",
                pieces[0].source.left()
            )));
        }
        for pair in pieces.windows(2) {
            if !pair[0].source.is_followed_by(&pair[1].source) {
                return Err(Error::BadTiling(format!(
                    "gap or overlap between {} and {}",
                    pair[0].source, pair[1].source
                )));
            }
        }
        if !pieces.last().expect("nonempty").source.right().is_one() {
            return Err(Error::BadTiling("last piece does not end at 1".into()));
        }

        for p in &pieces {
            if p.slope.is_zero() {
                return Err(Error::ZeroSlope);
            }
        }

        // Interior images must tile (0, 1); the leftover points are the
        // required breakpoint images.
        let mut images: Vec<(Rat, Rat)> = pieces.iter().map(|p| p.image_interior()).collect();
        for (lo, hi) in &images {
            if lo.is_negative() || *hi > Rat::one() {
                return Err(Error::ImageOutOfUnit);
            }
        }
        images.sort();
        if !images[0].0.is_zero() || !images.last().expect("nonempty").1.is_one() {
            return Err(Error::ImagesNotTiling);
        }
        for pair in images.windows(2) {
            if pair[0].1 != pair[1].0 {
                return Err(Error::ImagesNotTiling);
            }
        }
        let uncovered: BTreeSet<RatPoint> = images
            .iter()
            .map(|(lo, _)| RatPoint::new(lo.clone()).expect("image bound below 1"))
            .collect();

        let mut point_images: BTreeMap<RatPoint, RatPoint> = BTreeMap::new();
        for (x, y) in points {
            if point_images.insert(x.clone(), y).is_some() {
                return Err(Error::PointImageMismatch(format!("{} listed twice", x)));
            }
        }
        let lefts: BTreeSet<&RatPoint> = pieces.iter().map(|p| p.source.left()).collect();
        for x in point_images.keys() {
            if !lefts.contains(x) {
                return Err(Error::PointImageMismatch(format!(
                    "{} is not a piece left endpoint",
                    x
                )));
            }
        }
        for x in &lefts {
            if !point_images.contains_key(x) {
                return Err(Error::PointImageMismatch(format!("no image given for {}", x)));
            }
        }
        let values: BTreeSet<&RatPoint> = point_images.values().collect();
        if values.len() != point_images.len() {
            return Err(Error::NotBijective("two breakpoints share an image".into()));
        }
        for v in &values {
            if !uncovered.contains(v) {
                return Err(Error::NotBijective(format!(
                    "breakpoint image {} is not an uncovered point",
                    v
                )));
            }
        }

        Ok(PwMap::canonicalize(pieces, point_images))
    }

    fn canonicalize(
        pieces: Vec<AffinePiece>,
        mut point_images: BTreeMap<RatPoint, RatPoint>,
    ) -> PwMap {
        let mut merged: Vec<AffinePiece> = Vec::with_capacity(pieces.len());
        for piece in pieces {
            if let Some(prev) = merged.last_mut() {
                let x = piece.source.left().clone();
                if prev.slope == piece.slope
                    && prev.offset == piece.offset
                    && point_images[&x].value() == &prev.eval(x.value())
                {
                    prev.source = Interval::new(prev.source.left().clone(), piece.source.right().clone())
                        .expect("merged piece is nonempty");
                    point_images.remove(&x);
                    continue;
                }
            }
            merged.push(piece);
        }
        PwMap {
            pieces: merged,
            point_images,
        }
    }

    pub fn identity() -> PwMap {
        PwMap::build(
            alloc::vec![(Interval::unit(), Rat::one(), Rat::zero())],
            alloc::vec![(RatPoint::zero(), RatPoint::zero())],
        )
        .expect("identity is valid")
    }

    /// The involution reversing the interior of `i` with slope `-1` and
    /// fixing everything else, endpoints of `i` included.
    pub fn flip(i: &Interval) -> PwMap {
        let one = Rat::one();
        let mut pieces = Vec::new();
        let mut points = Vec::new();
        if !i.left().is_zero() {
            pieces.push((
                Interval::new(RatPoint::zero(), i.left().value().clone()).expect("left part"),
                one.clone(),
                Rat::zero(),
            ));
            points.push((RatPoint::zero(), RatPoint::zero()));
        }
        pieces.push((
            i.clone(),
            -one.clone(),
            i.left().value() + i.right(),
        ));
        points.push((i.left().clone(), i.left().clone()));
        if *i.right() < one {
            let r = RatPoint::new(i.right().clone()).expect("right endpoint below 1");
            pieces.push((
                Interval::new(r.clone(), one.clone()).expect("right part"),
                one.clone(),
                Rat::zero(),
            ));
            points.push((r.clone(), r));
        }
        PwMap::build(pieces, points).expect("flip is valid")
    }

    /// Right-continuous rearrangement that translates each source block onto
    /// the given destination left endpoint. Destinations must tile `[0, 1)`.
    pub(crate) fn rc_rearrangement(blocks: Vec<(Interval, Rat)>) -> Result<PwMap> {
        let mut pieces = Vec::with_capacity(blocks.len());
        let mut points = Vec::with_capacity(blocks.len());
        for (src, dest) in blocks {
            let offset = &dest - src.left().value();
            points.push((
                src.left().clone(),
                RatPoint::new(dest).map_err(|_| Error::ImageOutOfUnit)?,
            ));
            pieces.push((src, Rat::one(), offset));
        }
        PwMap::build(pieces, points)
    }

    /// Exchanges two consecutive blocks `i` and `j` by translation,
    /// right-continuously, fixing the rest.
    pub fn swap_adjacent(i: &Interval, j: &Interval) -> Result<PwMap> {
        if !i.is_followed_by(j) {
            return Err(Error::NotConsecutive);
        }
        let mut blocks = Vec::new();
        if !i.left().is_zero() {
            blocks.push((
                Interval::new(RatPoint::zero(), i.left().value().clone()).expect("prefix"),
                Rat::zero(),
            ));
        }
        blocks.push((j.clone(), i.left().value().clone()));
        blocks.push((i.clone(), i.left().value() + j.len()));
        if !j.right().is_one() {
            blocks.push((
                Interval::from_rats(j.right().clone(), Rat::one()).expect("suffix"),
                j.right().clone(),
            ));
        }
        PwMap::rc_rearrangement(blocks)
    }

    /// Embeds a finitely supported permutation: identity slopes everywhere,
    /// point images realizing the permutation.
    pub fn from_finperm(t: &FinPerm) -> PwMap {
        let cuts: BTreeSet<RatPoint> = t
            .support()
            .cloned()
            .chain(core::iter::once(RatPoint::zero()))
            .collect();
        let partition = Partition::from_breakpoints(cuts.iter().cloned());
        let pieces = partition
            .intervals()
            .iter()
            .map(|iv| (iv.clone(), Rat::one(), Rat::zero()))
            .collect();
        let points = cuts.into_iter().map(|x| (x.clone(), t.apply(&x))).collect();
        PwMap::build(pieces, points).expect("permutation embedding is valid")
    }

    /// Builds an interval exchange (with optional reversed pieces) from
    /// piece lengths, the arrangement and per-piece orientations.
    ///
    /// `arrangement[t]` is the index of the source piece placed `t`-th in
    /// the image. Every piece's left endpoint is sent to the left endpoint
    /// of its image interval, also on reversed pieces, so the finite defect
    /// permutation of the result is trivial by construction.
    pub fn from_iet(
        lengths: &[Rat],
        arrangement: &[usize],
        orientations: &[Orientation],
    ) -> Result<PwMap> {
        let n = lengths.len();
        if n == 0 {
            return Err(Error::BadIetData("no pieces"));
        }
        if arrangement.len() != n || orientations.len() != n {
            return Err(Error::BadIetData("length mismatch"));
        }
        if lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::BadIetData("lengths must be positive"));
        }
        if lengths.iter().sum::<Rat>() != Rat::one() {
            return Err(Error::BadIetData("lengths must sum to 1"));
        }
        let mut seen = alloc::vec![false; n];
        for &idx in arrangement {
            if idx >= n || seen[idx] {
                return Err(Error::BadIetData("arrangement is not a permutation"));
            }
            seen[idx] = true;
        }

        let mut src_left = alloc::vec![Rat::zero()];
        for l in lengths {
            let next = src_left.last().expect("nonempty") + l;
            src_left.push(next);
        }
        let mut dest_left = alloc::vec![Rat::zero(); n];
        let mut cursor = Rat::zero();
        for &src in arrangement {
            dest_left[src] = cursor.clone();
            cursor += &lengths[src];
        }

        let mut pieces = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        for j in 0..n {
            let source = Interval::from_rats(src_left[j].clone(), src_left[j + 1].clone())
                .expect("positive length");
            let (slope, offset) = match orientations[j] {
                Orientation::Preserving => (Rat::one(), &dest_left[j] - &src_left[j]),
                Orientation::Reversing => (-Rat::one(), &dest_left[j] + &src_left[j + 1]),
            };
            points.push((
                source.left().clone(),
                RatPoint::new(dest_left[j].clone()).expect("destination below 1"),
            ));
            pieces.push((source, slope, offset));
        }
        PwMap::build(pieces, points)
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn point_images(&self) -> &BTreeMap<RatPoint, RatPoint> {
        &self.point_images
    }

    /// The partition formed by the piece sources (the affine-part tiling,
    /// which refines [`PwMap::minimal_partition`]).
    pub fn piece_partition(&self) -> Partition {
        Partition::from_intervals(self.pieces.iter().map(|p| p.source.clone()).collect())
            .expect("pieces tile [0, 1)")
    }

    fn piece_at_value(&self, v: &Rat) -> &AffinePiece {
        let idx = self
            .pieces
            .partition_point(|p| p.source.left().value() <= v)
            .saturating_sub(1);
        &self.pieces[idx]
    }

    /// Evaluation. Breakpoints use their stored image; interior points use
    /// the affine piece containing them.
    pub fn apply(&self, x: &RatPoint) -> RatPoint {
        if let Some(y) = self.point_images.get(x) {
            return y.clone();
        }
        let y = self.piece_at_value(x.value()).eval(x.value());
        RatPoint::new(y).expect("interior image lies in (0, 1)")
    }

    /// The limit of `self` from the right at `x`.
    pub fn right_limit(&self, x: &RatPoint) -> Rat {
        self.piece_at_value(x.value()).eval(x.value())
    }

    /// The limit of `self` from the left at `b` (for `0 < b <= 1`).
    pub fn left_limit(&self, b: &Rat) -> Rat {
        let idx = self
            .pieces
            .partition_point(|p| p.source.left().value() < b)
            .saturating_sub(1);
        self.pieces[idx].eval(b)
    }

    /// Whether the map is order-reversing on the interior of `iv`.
    ///
    /// Meaningful when the map is continuous (hence strictly monotone) on
    /// that interior, e.g. for intervals of an associated partition.
    pub fn reverses_on(&self, iv: &Interval) -> bool {
        self.piece_at_value(iv.left().value()).is_reversing()
    }

    /// The half-open hull `[inf, sup)` of the image of the interior of
    /// `iv`, for `iv` on whose interior the map is continuous.
    pub fn image_hull(&self, iv: &Interval) -> Interval {
        let (lo, hi) = if self.reverses_on(iv) {
            (self.left_limit(iv.right()), self.right_limit(iv.left()))
        } else {
            (self.right_limit(iv.left()), self.left_limit(iv.right()))
        };
        Interval::from_rats(lo, hi).expect("image hull of an interval")
    }

    /// The coarsest partition on whose interval interiors the map is
    /// continuous. Every associated partition refines it.
    pub fn minimal_partition(&self) -> Partition {
        let mut cuts = Vec::new();
        for pair in self.pieces.windows(2) {
            let x = pair[1].source.left();
            let value = self.point_images[x].value();
            let from_left = pair[0].eval(x.value());
            let from_right = pair[1].eval(x.value());
            if from_left != *value || from_right != *value {
                cuts.push(x.clone());
            }
        }
        Partition::from_breakpoints(cuts)
    }

    /// Whether `p` is associated with the map (refines the minimal
    /// partition, i.e. the map is continuous on each interval interior).
    pub fn is_associated(&self, p: &Partition) -> bool {
        p.refines(&self.minimal_partition())
    }

    /// The partition whose interval interiors are the images of the
    /// interiors of `p`'s intervals.
    pub fn arrival_partition(&self, p: &Partition) -> Result<Partition> {
        if !self.is_associated(p) {
            return Err(Error::NotAssociated);
        }
        let hulls = p.intervals().iter().map(|iv| self.image_hull(iv)).collect();
        Ok(Partition::from_intervals(hulls).expect("images of an associated partition tile"))
    }

    /// Composition `self ∘ other` (apply `other` first). Exact; the result
    /// is canonical.
    pub fn compose(&self, other: &PwMap) -> PwMap {
        let mut cuts: BTreeSet<RatPoint> = other
            .pieces
            .iter()
            .map(|p| p.source.left().clone())
            .collect();
        // Pull back interior breakpoints of `self` through `other`.
        for gp in &other.pieces {
            let (lo, hi) = gp.image_interior();
            for fp in &self.pieces[1..] {
                let w = fp.source.left().value();
                if *w > lo && *w < hi {
                    let x = (w - &gp.offset) / &gp.slope;
                    cuts.insert(RatPoint::new(x).expect("pullback lies in the source interior"));
                }
            }
        }
        let cuts: Vec<RatPoint> = cuts.into_iter().collect();
        let mut pieces = Vec::with_capacity(cuts.len());
        let mut points = Vec::with_capacity(cuts.len());
        for (k, left) in cuts.iter().enumerate() {
            let right = match cuts.get(k + 1) {
                Some(next) => next.value().clone(),
                None => Rat::one(),
            };
            let mid = (left.value() + &right) / rat(2, 1);
            let gp = other.piece_at_value(&mid);
            let fp = self.piece_at_value(&gp.eval(&mid));
            let slope = &fp.slope * &gp.slope;
            let offset = &fp.slope * &gp.offset + &fp.offset;
            pieces.push((
                Interval::new(left.clone(), right).expect("consecutive cuts"),
                slope,
                offset,
            ));
            points.push((left.clone(), self.apply(&other.apply(left))));
        }
        PwMap::build(pieces, points).expect("composite of valid maps is valid")
    }

    pub fn inverse(&self) -> PwMap {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let (lo, hi) = p.image_interior();
            let slope = Rat::one() / &p.slope;
            let offset = -&p.offset / &p.slope;
            pieces.push((
                Interval::from_rats(lo, hi).expect("image hull"),
                slope,
                offset,
            ));
        }
        let points = self
            .point_images
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        PwMap::build(pieces, points).expect("inverse of a valid map is valid")
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.len() == 1
            && self.is_in_sfin()
            && self.point_images[&RatPoint::zero()].is_zero()
    }

    /// Identity outside a finite set.
    pub fn is_in_sfin(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| p.slope.is_one() && p.offset.is_zero())
    }

    /// The underlying finitely supported permutation, when there is one.
    pub fn to_finperm(&self) -> Option<FinPerm> {
        if !self.is_in_sfin() {
            return None;
        }
        Some(
            FinPerm::from_images(
                self.point_images
                    .iter()
                    .map(|(x, y)| (x.clone(), y.clone())),
            )
            .expect("breakpoint images of a valid map permute the breakpoints"),
        )
    }

    /// Equality in the quotient by finitely supported permutations, i.e.
    /// pointwise equality outside a finite set.
    pub fn eq_mod_finperm(&self, other: &PwMap) -> bool {
        self.compose(&other.inverse()).is_in_sfin()
    }

    pub fn features(&self) -> FeatureReport {
        let one = Rat::one();
        let unit_slopes = self.pieces.iter().all(|p| p.slope.abs() == one);
        let any_reversing = self.pieces.iter().any(|p| p.is_reversing());
        let any_preserving = self.pieces.iter().any(|p| !p.is_reversing());
        let orientation = match (any_preserving, any_reversing) {
            (true, false) => OrientationProfile::AllPreserving,
            (false, true) => OrientationProfile::AllReversing,
            _ => OrientationProfile::Mixed,
        };
        let right_continuous = self.pieces.iter().all(|p| {
            self.point_images[p.source.left()].value() == &p.eval(p.source.left().value())
        });
        let continuous = right_continuous
            && self.pieces.windows(2).all(|pair| {
                let x = pair[1].source.left();
                pair[0].eval(x.value()) == *self.point_images[x].value()
            });
        FeatureReport {
            in_sfin: self.is_in_sfin(),
            right_continuous,
            continuous,
            orientation,
            unit_slopes,
            piece_count: self.pieces.len(),
        }
    }

    /// The least `n <= nmax` with `self^n = id`, if any.
    pub fn order_up_to(&self, nmax: usize) -> Option<usize> {
        let mut acc = self.clone();
        for n in 1..=nmax {
            if acc.is_identity() {
                return Some(n);
            }
            acc = acc.compose(self);
        }
        None
    }
}

impl fmt::Debug for PwMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PwMap{{")?;
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", p)?;
        }
        write!(f, " | ")?;
        for (k, (x, y)) in self.point_images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", x, y)?;
        }
        write!(f, "}}")
    }
}
