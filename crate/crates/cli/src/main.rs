use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flipsig_cli::{format, svg, verify};
use flipsig_core::decompose::{
    decompose_flip_perm_rc, decompose_rc_perm_flip, flips_factorization, normalize_to_iet,
    swaps_factorization,
};
use flipsig_core::signature::signature;
use flipsig_core::subgroups::{
    classify_normal, normalizer_witness_orientation, normalizer_witness_rc, simplicity_witness,
};
use flipsig_core::{format_rat, parse_rat, FinPerm, Interval, PwMap, RatPoint};

/// Exact piecewise-affine bijections of [0,1): evaluation, signature,
/// factorizations, subgroup classification and proof witnesses.
///
/// Elements are read from files in the line-oriented text format (or from
/// standard input when the path is `-`); see the README for the format.
#[derive(Parser)]
#[command(name = "flipsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an element at a rational point of [0, 1)
    Eval { element: String, point: String },
    /// Print the signature of an element (0 or 1)
    Sign { element: String },
    /// Compose elements (leftmost applied last) and print the canonical result
    Compose {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Print the inverse element
    Invert { element: String },
    /// Print a factorization of an element
    Decompose {
        #[arg(value_enum)]
        kind: DecomposeKind,
        element: String,
    },
    /// Print the smallest normal subgroup containing the element
    Classify { element: String },
    /// Print a constructive witness element
    Witness {
        #[arg(value_enum)]
        kind: WitnessKind,
        element: String,
    },
    /// Print the least n with h^n = id, or `exceeds <max>`
    Order {
        element: String,
        #[arg(long, default_value_t = 24)]
        max: usize,
    },
    /// Render the graph of an element as SVG
    Render {
        element: String,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded property battery and report per-suite results
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum DecomposeKind {
    /// flips ∘ permutation ∘ right-continuous exchange
    Rsf,
    /// right-continuous exchange ∘ permutation ∘ flips
    Gts,
    /// unit-slope part ∘ piecewise-affine homeomorphism
    Homeo,
    /// word in adjacent block swaps (left factor applied last)
    Swaps,
    /// word in flips with a finite-permutation residual
    Flips,
}

#[derive(Copy, Clone, ValueEnum)]
enum WitnessKind {
    /// displaced interval and two-flip commutator
    Simplicity,
    /// conjugate leaves the right-continuous order-preserving subgroup
    Rc,
    /// conjugate leaves the order-preserving subgroup
    Orientation,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (`flipsig ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_element(path: &str) -> Result<PwMap, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    format::parse_element(&text).map_err(|e| format!("{path}: {e}"))
}

fn interval_line(iv: &Interval) -> String {
    format!("{} {}", iv.left(), format_rat(iv.right()))
}

fn print_perm(perm: &FinPerm) {
    for (x, y) in perm.pairs() {
        println!("{x} {y}");
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Eval { element, point } => {
            let h = read_element(&element)?;
            let x = parse_rat(&point)
                .and_then(RatPoint::new)
                .map_err(|e| format!("point: {e}"))?;
            println!("{}", h.apply(&x));
        }
        Command::Sign { element } => {
            let h = read_element(&element)?;
            println!("{}", signature(&h));
        }
        Command::Compose { elements } => {
            let mut acc = PwMap::identity();
            for path in elements.iter().rev() {
                let h = read_element(path)?;
                acc = h.compose(&acc);
            }
            print!("{}", format::serialize_element(&acc));
        }
        Command::Invert { element } => {
            let h = read_element(&element)?;
            print!("{}", format::serialize_element(&h.inverse()));
        }
        Command::Decompose { kind, element } => {
            let h = read_element(&element)?;
            run_decompose(kind, &h)?;
        }
        Command::Classify { element } => {
            let h = read_element(&element)?;
            println!("{}", classify_normal(&h));
        }
        Command::Witness { kind, element } => {
            let h = read_element(&element)?;
            run_witness(kind, &h)?;
        }
        Command::Order { element, max } => {
            let h = read_element(&element)?;
            match h.order_up_to(max) {
                Some(n) => println!("{n}"),
                None => println!("exceeds {max}"),
            }
        }
        Command::Render { element, output } => {
            let h = read_element(&element)?;
            let image = svg::render(&h);
            match output {
                Some(path) => fs::write(&path, image)
                    .map_err(|e| format!("writing {}: {e}", path.display()))?,
                None => print!("{image}"),
            }
        }
        Command::Verify { seed } => {
            let outcomes = verify::run_all(seed);
            print!("{}", verify::report(&outcomes));
            if outcomes.iter().any(|o| !o.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_decompose(kind: DecomposeKind, h: &PwMap) -> Result<(), String> {
    match kind {
        DecomposeKind::Rsf => {
            let d = decompose_flip_perm_rc(h).map_err(|e| e.to_string())?;
            println!("[flips]");
            for iv in &d.flips {
                println!("{}", interval_line(iv));
            }
            println!("[perm]");
            print_perm(&d.perm);
            println!("[rc]");
            print!("{}", format::serialize_element(&d.rc));
        }
        DecomposeKind::Gts => {
            let d = decompose_rc_perm_flip(h).map_err(|e| e.to_string())?;
            println!("[rc]");
            print!("{}", format::serialize_element(&d.rc));
            println!("[perm]");
            print_perm(&d.perm);
            println!("[flips]");
            for iv in &d.flips {
                println!("{}", interval_line(iv));
            }
        }
        DecomposeKind::Homeo => {
            let s = normalize_to_iet(h);
            println!("[iet]");
            print!("{}", format::serialize_element(&s.iet));
            println!("[homeo]");
            print!("{}", format::serialize_element(&s.homeo));
        }
        DecomposeKind::Swaps => {
            let word = swaps_factorization(h).map_err(|e| e.to_string())?;
            for (a, b) in &word {
                println!(
                    "swap {} {} {}",
                    a.left(),
                    b.left(),
                    format_rat(b.right())
                );
            }
        }
        DecomposeKind::Flips => {
            let word = flips_factorization(h).map_err(|e| e.to_string())?;
            println!("[flips]");
            for iv in &word.flips {
                println!("{}", interval_line(iv));
            }
            println!("[residual]");
            print_perm(&word.residual);
        }
    }
    Ok(())
}

fn run_witness(kind: WitnessKind, h: &PwMap) -> Result<(), String> {
    match kind {
        WitnessKind::Simplicity => {
            let w = simplicity_witness(h).map_err(|e| e.to_string())?;
            println!("interval {}", interval_line(&w.interval));
            println!("image {}", interval_line(&w.moved_hull));
            println!("[commutator]");
            print!("{}", format::serialize_element(&w.commutator));
        }
        WitnessKind::Rc => {
            let f = normalizer_witness_rc(h).map_err(|e| e.to_string())?;
            print!("{}", format::serialize_element(&f));
        }
        WitnessKind::Orientation => {
            let f = normalizer_witness_orientation(h).map_err(|e| e.to_string())?;
            print!("{}", format::serialize_element(&f));
        }
    }
    Ok(())
}
