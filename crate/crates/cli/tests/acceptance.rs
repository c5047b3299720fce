//! Acceptance suite: one test per criterion, each driving the corresponding
//! seeded property suite at full size and failing on any violated check.
//! Run with `cargo test -p flipsig-cli --test acceptance` (add
//! `-- --nocapture` to see the per-criterion PASS lines).

use std::io::Write;
use std::process::{Command, Stdio};

use flipsig_cli::verify;

const SEED: u64 = 7;

fn run_criterion(criterion: usize, suite: usize) {
    let outcome = verify::run_suite(suite, SEED);
    for failure in &outcome.failures {
        eprintln!("criterion {criterion:02}: {failure}");
    }
    println!(
        "criterion {criterion:02} ({}): {} ({} checks)",
        outcome.name,
        if outcome.passed() { "PASS" } else { "FAIL" },
        outcome.checks
    );
    assert!(
        outcome.passed(),
        "criterion {criterion:02} ({}) failed {} of {} checks",
        criterion,
        outcome.name,
        outcome.failed,
    );
}

#[test]
fn criterion_01_signature_is_a_homomorphism() {
    run_criterion(1, 0);
}

#[test]
fn criterion_02_signature_is_partition_independent() {
    run_criterion(2, 1);
}

#[test]
fn criterion_03_signature_extends_the_classical_sign() {
    run_criterion(3, 2);
}

#[test]
fn criterion_04_kernel_membership() {
    run_criterion(4, 3);
}

#[test]
fn criterion_05_decomposition_round_trips() {
    run_criterion(5, 4);
}

#[test]
fn criterion_06_flip_generation() {
    run_criterion(6, 5);
}

#[test]
fn criterion_07_simplicity_machinery() {
    run_criterion(7, 6);
}

#[test]
fn criterion_08_normalizer_witnesses() {
    run_criterion(8, 7);
}

#[test]
fn criterion_09_homeomorphism_invariance() {
    run_criterion(9, 8);
}

#[test]
fn criterion_10_five_subgroup_classifier() {
    run_criterion(10, 9);
}

const HALF_SWAP_DOC: &str = "\
piece 0/1 1/2 slope 1/1 offset 1/2
piece 1/2 1/1 slope 1/1 offset -1/2
point 0/1 1/2
point 1/2 0/1
";

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flipsig"))
}

fn xml_parses(xml: &str) -> bool {
    let mut reader = quick_xml::Reader::from_str(xml);
    loop {
        match reader.read_event() {
            Ok(quick_xml::events::Event::Eof) => return true,
            Ok(_) => {}
            Err(_) => return false,
        }
    }
}

#[test]
fn criterion_11_cli_round_trip_verify_and_render() {
    // Byte-stable serialize/parse round trips on random elements.
    run_criterion(11, 10);
    run_criterion(11, 11);

    // `verify --seed 7` exits 0 and is deterministic.
    let run_once = || {
        binary()
            .args(["verify", "--seed", "7"])
            .output()
            .expect("spawn flipsig verify")
    };
    let first = run_once();
    assert!(
        first.status.success(),
        "verify --seed 7 exited {:?}:\n{}",
        first.status.code(),
        String::from_utf8_lossy(&first.stdout)
    );
    let second = run_once();
    assert_eq!(first.stdout, second.stdout, "verify output is not deterministic");

    // `render` emits XML that a real parser accepts.
    let mut child = binary()
        .args(["render", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn flipsig render");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(HALF_SWAP_DOC.as_bytes())
        .expect("write element");
    let out = child.wait_with_output().expect("render output");
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).expect("utf-8 svg");
    assert!(xml_parses(&svg), "render output did not parse as XML:\n{svg}");
    assert!(svg.contains("<svg"));
    println!("criterion 11 (cli-verify-render): PASS");
}
