//! The seeded property battery behind `flipsig verify`.
//!
//! Each suite draws deterministic pseudorandom elements, checks one family
//! of exact identities, and reports the number of checks with any failures.
//! The acceptance tests run the same suites one criterion at a time.

use flipsig_core::decompose::{
    conjugate_two_flips_to_one, decompose_flip_perm_rc, decompose_rc_perm_flip,
    flips_factorization, normalize_to_iet,
};
use flipsig_core::random::random_element;
use flipsig_core::signature::{
    finperm_sign, finperm_sign_by_inversions, signature, signature_at,
};
use flipsig_core::subgroups::{
    classify_normal, normalizer_witness_orientation, normalizer_witness_rc, simplicity_witness,
    NormalLevel,
};
use flipsig_core::{
    rat, ElementClass, FinPerm, Interval, OrientationProfile, Partition, PwMap, RandomProfile,
    Rat, RatPoint, SignBit,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result of one suite: how many checks ran and which failed (the first few
/// failures verbatim, the rest only counted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 8 {
                self.failures.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

pub type SuiteFn = fn(u64) -> SuiteOutcome;

pub const SUITES: [(&str, SuiteFn); 12] = [
    ("signature-homomorphism", homomorphism),
    ("partition-independence", partition_independence),
    ("classical-extension", classical_extension),
    ("kernel-membership", kernel_membership),
    ("decomposition-roundtrips", decomposition_roundtrips),
    ("flip-generation", flip_generation),
    ("simplicity-machinery", simplicity_machinery),
    ("normalizer-witnesses", normalizer_witnesses),
    ("homeo-invariance", homeo_invariance),
    ("subgroup-classifier", subgroup_classifier),
    ("serialization-roundtrip", serialization_roundtrip),
    ("svg-render", svg_render),
];

pub fn run_suite(index: usize, seed: u64) -> SuiteOutcome {
    let (_, f) = SUITES[index];
    f(suite_seed(seed, index as u64))
}

pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    (0..SUITES.len()).map(|i| run_suite(i, seed)).collect()
}

/// Deterministic textual report, one line per suite plus failure details.
pub fn report(outcomes: &[SuiteOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&format!(
            "{:<26} {} ({} checks)\n",
            o.name,
            if o.passed() { "PASS" } else { "FAIL" },
            o.checks
        ));
        for f in &o.failures {
            out.push_str(&format!("    {f}\n"));
        }
        if o.failed > o.failures.len() {
            out.push_str(&format!(
                "    ... and {} more failures\n",
                o.failed - o.failures.len()
            ));
        }
    }
    out
}

fn suite_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0x100_0000_01B3))
}

fn element(class: ElementClass, seed: u64) -> PwMap {
    random_element(&RandomProfile::new(class, 8, 96), seed)
}

fn mixed_class(k: u64) -> ElementClass {
    if k.is_multiple_of(2) {
        ElementClass::Iet
    } else {
        ElementClass::PAff
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_unit_rat(rng: &mut ChaCha8Rng, bound: u64) -> Rat {
    let q = rng.random_range(2..=bound);
    let p = rng.random_range(1..q);
    rat(p as i64, q as i64)
}

fn random_subinterval(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat) -> Interval {
    loop {
        let a = lo + (hi - lo) * random_unit_rat(rng, 48);
        let b = lo + (hi - lo) * random_unit_rat(rng, 48);
        if a != b {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            return Interval::from_rats(a, b).expect("nonempty");
        }
    }
}

fn refinement_chain(rng: &mut ChaCha8Rng, start: &Partition, splits: usize) -> Vec<Partition> {
    let mut chain = vec![start.clone()];
    for _ in 0..splits {
        let current = chain.last().expect("nonempty");
        let cell = &current.intervals()[rng.random_range(0..current.len())];
        let cut = cell.left().value() + cell.len() * random_unit_rat(rng, 64);
        chain.push(current.with_breakpoint(RatPoint::new(cut).expect("interior point")));
    }
    chain
}

fn homomorphism(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("signature-homomorphism");
    for k in 0..1000u64 {
        let f = element(mixed_class(k), seed.wrapping_add(2 * k));
        let g = element(mixed_class(k / 2), seed.wrapping_add(2 * k + 1));
        let composite = signature(&f.compose(&g));
        let sum = signature(&f) + signature(&g);
        o.check(composite == sum, || {
            format!("pair {k}: sig(f∘g) = {composite} but sig(f) + sig(g) = {sum}")
        });
    }
    o
}

fn partition_independence(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("partition-independence");
    let mut r = rng(seed ^ 0xA5A5);
    for k in 0..200u64 {
        let h = element(mixed_class(k), seed.wrapping_add(k));
        let expected = signature(&h);
        for p in refinement_chain(&mut r, &h.minimal_partition(), 4) {
            let got = signature_at(&h, &p).expect("refinements stay associated");
            o.check(got == expected, || {
                format!("element {k}: signature about {p} is {got}, expected {expected}")
            });
        }
    }
    o
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm.
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn index_parity(perm: &[usize]) -> SignBit {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    SignBit::from_parity(inversions)
}

fn classical_extension(_seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("classical-extension");
    let support: Vec<RatPoint> = (1..=6)
        .map(|k| RatPoint::new(rat(k, 7)).expect("in (0, 1)"))
        .collect();
    for images in permutations_of(6) {
        let perm = FinPerm::from_images(
            support
                .iter()
                .cloned()
                .zip(images.iter().map(|&i| support[i].clone())),
        )
        .expect("permutation of the support");
        let expected = index_parity(&images);
        let lifted = signature(&PwMap::from_finperm(&perm));
        o.check(
            lifted == expected
                && finperm_sign(&perm) == expected
                && finperm_sign_by_inversions(&perm) == expected,
            || format!("permutation {images:?}: lifted sign {lifted}, oracle {expected}"),
        );
    }
    o
}

fn kernel_membership(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("kernel-membership");
    for k in 0..200u64 {
        let class = if k % 2 == 0 {
            ElementClass::IetPlusRc
        } else {
            ElementClass::HomeoPlus
        };
        let h = element(class, seed.wrapping_add(k));
        let s = signature(&h);
        o.check(s == SignBit::EVEN, || {
            format!("right-continuous order-preserving element {k} has signature {s}")
        });
    }
    let mut r = rng(seed ^ 0x4B1D);
    for k in 0..50 {
        let iv = random_subinterval(&mut r, &rat(0, 1), &rat(1, 1));
        let s = signature(&PwMap::flip(&iv));
        o.check(s == SignBit::ODD, || {
            format!("flip {k} of {iv} has signature {s}")
        });
    }
    o
}

fn decomposition_roundtrips(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("decomposition-roundtrips");
    for k in 0..300u64 {
        let h = element(ElementClass::Iet, seed.wrapping_add(k));
        let d = decompose_flip_perm_rc(&h).expect("unit slopes");
        o.check(d.recompose() == h, || format!("flip-perm-rc round trip failed at {k}"));
        let predicted = SignBit::from_parity(d.flips.len()) + finperm_sign(&d.perm);
        let actual = signature(&h);
        o.check(predicted == actual, || {
            format!(
                "element {k}: |flips| + sign(perm) = {predicted} but signature = {actual}"
            )
        });
        let m = decompose_rc_perm_flip(&h).expect("unit slopes");
        o.check(m.recompose() == h, || format!("rc-perm-flip round trip failed at {k}"));
    }
    for k in 0..300u64 {
        let h = element(ElementClass::PAff, seed.wrapping_add(10_000 + k));
        let s = normalize_to_iet(&h);
        o.check(s.recompose() == h, || format!("homeo split round trip failed at {k}"));
        o.check(s.iet.features().unit_slopes, || {
            format!("homeo split of element {k} left non-unit slopes")
        });
        o.check(signature(&s.iet) == signature(&h), || {
            format!("homeo factor of element {k} changed the signature")
        });
    }
    o
}

fn flip_generation(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("flip-generation");
    for k in 0..200u64 {
        let h = element(ElementClass::Iet, seed.wrapping_add(k));
        let word = flips_factorization(&h).expect("unit slopes");
        let product = word.product();
        o.check(product.eq_mod_finperm(&h), || {
            format!("flip word of element {k} differs from it beyond a finite set")
        });
        o.check(word.recompose() == h, || {
            format!("flip word of element {k} with residual does not recompose")
        });
        let predicted = SignBit::from_parity(word.flips.len()) + finperm_sign(&word.residual);
        let actual = signature(&h);
        o.check(predicted == actual, || {
            format!("element {k}: #flips + sign(residual) = {predicted}, signature = {actual}")
        });
    }
    o
}

fn simplicity_machinery(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("simplicity-machinery");
    let mut found = 0u64;
    let mut attempt = 0u64;
    while found < 100 && attempt < 2000 {
        let g = element(mixed_class(attempt), seed.wrapping_add(attempt));
        attempt += 1;
        if g.is_in_sfin() {
            continue;
        }
        found += 1;
        let w = simplicity_witness(&g).expect("outside S_fin");
        let expected = PwMap::flip(&w.moved_hull).compose(&PwMap::flip(&w.interval));
        o.check(
            w.interval.is_disjoint_from(&w.moved_hull)
                && w.commutator.eq_mod_finperm(&expected)
                && signature(&w.commutator) == SignBit::EVEN,
            || format!("simplicity witness {found} violates its contract for {g:?}"),
        );
    }
    o.check(found == 100, || {
        format!("only {found} elements outside S_fin in {attempt} draws")
    });

    let mut r = rng(seed ^ 0x51A9);
    for k in 0..50 {
        let cut = random_unit_rat(&mut r, 48);
        let i = random_subinterval(&mut r, &rat(0, 1), &cut);
        let j = random_subinterval(&mut r, &cut, &rat(1, 1));
        let (c, target) = conjugate_two_flips_to_one(&i, &j).expect("disjoint");
        let two = PwMap::flip(&i).compose(&PwMap::flip(&j));
        let conj = c.compose(&two).compose(&c.inverse());
        o.check(
            conj.eq_mod_finperm(&PwMap::flip(&target))
                && target.left().is_zero()
                && target.len() == i.len() + j.len(),
            || format!("conjugation {k} of flips on {i} and {j} missed flip({target})"),
        );
    }
    o
}

fn in_rc_plus(h: &PwMap) -> bool {
    let f = h.features();
    f.right_continuous && f.orientation == OrientationProfile::AllPreserving
}

fn normalizer_witnesses(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("normalizer-witnesses");
    let mut found = 0u64;
    let mut attempt = 0u64;
    while found < 100 && attempt < 2000 {
        let g = element(ElementClass::Iet, seed.wrapping_add(attempt));
        attempt += 1;
        if in_rc_plus(&g) {
            continue;
        }
        found += 1;
        let f = normalizer_witness_rc(&g).expect("admissible");
        let conj = g.compose(&f).compose(&g.inverse());
        o.check(in_rc_plus(&f) && !in_rc_plus(&conj), || {
            format!("rc witness {found} failed for {g:?}")
        });
    }
    o.check(found == 100, || {
        format!("only {found} non-right-continuous draws in {attempt}")
    });

    found = 0;
    attempt = 0;
    while found < 100 && attempt < 3000 {
        let g = element(ElementClass::Iet, seed.wrapping_add(50_000 + attempt));
        attempt += 1;
        if g.features().orientation != OrientationProfile::Mixed {
            continue;
        }
        found += 1;
        let f = normalizer_witness_orientation(&g).expect("admissible");
        let wf = f.features();
        let conj = g.compose(&f).compose(&g.inverse());
        o.check(
            wf.unit_slopes
                && wf.orientation == OrientationProfile::AllPreserving
                && !wf.in_sfin
                && conj.features().orientation != OrientationProfile::AllPreserving,
            || format!("orientation witness {found} failed for {g:?}"),
        );
    }
    o.check(found == 100, || {
        format!("only {found} mixed-orientation draws in {attempt}")
    });
    o
}

fn homeo_invariance(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("homeo-invariance");
    for k in 0..200u64 {
        let h = element(mixed_class(k), seed.wrapping_add(k));
        let phi = element(ElementClass::HomeoPlus, seed.wrapping_add(100_000 + k));
        let base = signature(&h);
        let right = signature(&h.compose(&phi));
        let left = signature(&phi.compose(&h));
        let conj = signature(&phi.compose(&h).compose(&phi.inverse()));
        o.check(right == base && left == base && conj == base, || {
            format!("pair {k}: sig = {base}, sig(hφ) = {right}, sig(φh) = {left}, conjugate {conj}")
        });
    }
    o
}

/// Levels a product can land on, given the factors' levels; follows from
/// signature additivity and closure of the finitely supported permutations.
fn allowed_product_levels(a: NormalLevel, b: NormalLevel) -> Vec<NormalLevel> {
    use NormalLevel::*;
    let in_sfin = |l: NormalLevel| matches!(l, Trivial | AlternatingFin | SymmetricFin);
    let odd = |l: NormalLevel| matches!(l, SymmetricFin | Full);
    let product_odd = odd(a) != odd(b);
    [Trivial, AlternatingFin, SymmetricFin, SignatureKernel, Full]
        .into_iter()
        .filter(|&l| odd(l) == product_odd)
        .filter(|&l| !(in_sfin(a) && in_sfin(b)) || in_sfin(l))
        .collect()
}

fn subgroup_classifier(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("subgroup-classifier");

    let three_cycle = FinPerm::from_cycle(&[
        RatPoint::new(rat(0, 1)).expect("0"),
        RatPoint::new(rat(1, 3)).expect("1/3"),
        RatPoint::new(rat(2, 3)).expect("2/3"),
    ])
    .expect("cycle");
    let transposition = FinPerm::transposition(
        RatPoint::new(rat(0, 1)).expect("0"),
        RatPoint::new(rat(1, 2)).expect("1/2"),
    )
    .expect("transposition");
    let rotation = PwMap::swap_adjacent(
        &Interval::from_rats(rat(0, 1), rat(2, 3)).expect("block"),
        &Interval::from_rats(rat(2, 3), rat(1, 1)).expect("block"),
    )
    .expect("consecutive");
    let curated = [
        (PwMap::identity(), NormalLevel::Trivial),
        (PwMap::from_finperm(&three_cycle), NormalLevel::AlternatingFin),
        (PwMap::from_finperm(&transposition), NormalLevel::SymmetricFin),
        (rotation, NormalLevel::SignatureKernel),
        (
            PwMap::flip(&Interval::from_rats(rat(1, 4), rat(1, 2)).expect("interval")),
            NormalLevel::Full,
        ),
    ];
    for (h, expected) in &curated {
        let got = classify_normal(h);
        o.check(got == *expected, || {
            format!("curated element classified as {got}, expected {expected}")
        });
    }

    for k in 0..200u64 {
        let classes = [
            ElementClass::Iet,
            ElementClass::PAff,
            ElementClass::FinPerm,
            ElementClass::IetPlusRc,
        ];
        let f = element(classes[(k % 4) as usize], seed.wrapping_add(k));
        let g = element(classes[((k / 4) % 4) as usize], seed.wrapping_add(7000 + k));
        let level = classify_normal(&f.compose(&g));
        let allowed = allowed_product_levels(classify_normal(&f), classify_normal(&g));
        o.check(allowed.contains(&level), || {
            format!("product {k} classified {level}, outside {allowed:?}")
        });
    }
    o
}

fn serialization_roundtrip(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("serialization-roundtrip");
    let classes = [
        ElementClass::Iet,
        ElementClass::IetPlus,
        ElementClass::IetPlusRc,
        ElementClass::PAff,
        ElementClass::FinPerm,
        ElementClass::HomeoPlus,
    ];
    for k in 0..100u64 {
        let h = element(classes[(k % 6) as usize], seed.wrapping_add(k));
        let doc = crate::format::serialize_element(&h);
        match crate::format::parse_element(&doc) {
            Ok(back) => {
                let again = crate::format::serialize_element(&back);
                o.check(back == h && again == doc, || {
                    format!("round trip of element {k} was not byte-stable")
                });
            }
            Err(e) => o.check(false, || format!("serialized element {k} failed to parse: {e}")),
        }
    }
    o
}

fn svg_render(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("svg-render");
    let mut samples = vec![
        PwMap::identity(),
        PwMap::flip(&Interval::from_rats(rat(1, 4), rat(1, 2)).expect("interval")),
    ];
    for k in 0..6u64 {
        samples.push(element(mixed_class(k), seed.wrapping_add(k)));
    }
    for (k, h) in samples.iter().enumerate() {
        let svg = crate::svg::render(h);
        o.check(
            crate::svg::looks_well_formed(&svg)
                && svg.matches("<line ").count() == h.pieces().len()
                && svg.matches("<circle ").count() == h.point_images().len(),
            || format!("render of sample {k} is malformed or incomplete"),
        );
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_runs_are_deterministic() {
        assert_eq!(run_suite(2, 7), run_suite(2, 7));
        assert_eq!(run_suite(10, 7), run_suite(10, 7));
        assert_eq!(run_suite(11, 7), run_suite(11, 7));
    }

    #[test]
    fn report_lists_every_suite_once() {
        let outcomes = vec![
            SuiteOutcome {
                name: "alpha",
                checks: 3,
                failed: 0,
                failures: vec![],
            },
            SuiteOutcome {
                name: "beta",
                checks: 2,
                failed: 1,
                failures: vec!["broken".into()],
            },
        ];
        let text = report(&outcomes);
        assert!(text.contains("alpha"));
        assert!(text.contains("PASS (3 checks)"));
        assert!(text.contains("FAIL (2 checks)"));
        assert!(text.contains("broken"));
    }
}
