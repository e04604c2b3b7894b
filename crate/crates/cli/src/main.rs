//! `bandperm`: plus-index, centering and factorization of banded permutations.
//!
//! Exit codes: 0 ok, 1 a verified property failed, 2 unreadable or
//! schema-invalid input, 3 a permutation invariant is violated, 4 the layer
//! bound was exceeded.

use std::io::Read;
use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;

use bandperm::doc::PermDocument;
use bandperm::fixtures::{fixture_document, FIXTURES};
use bandperm::render;
use bandperm::report::{CenterReport, FactorMode, FactorReport, Report, Sweep};
use bandperm::verify;
use bandperm::{BandedPermutation, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "bandperm",
    version,
    about = "Index and factor banded permutations of the integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bandwidth, window count n and plus-index κ = n - w.
    Index {
        /// Permutation document; stdin when omitted or "-".
        input: Option<PathBuf>,
        /// Position of the counting window.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        jstar: i64,
        /// Report the window at every jstar in LO:HI instead.
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
        sweep: Option<String>,
    },
    /// Shift the main diagonal to the zeroth one.
    Center { input: Option<PathBuf> },
    /// Factor the (centered) permutation.
    Factor {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Bc)]
        mode: Mode,
    },
    /// Run the property suite on the input (if any) and on random instances.
    Verify {
        /// Optional permutation document; "-" reads stdin.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a window of the matrix or its arrow diagram.
    Render {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Row range LO:HI (half open).
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
        rows: Option<String>,
    },
    /// Print a named example, or list them.
    Examples {
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Bc,
    Layers,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Dot,
}

struct Failure {
    code: u8,
    body: serde_json::Value,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            body: json!({ "error": "input", "message": message.into() }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Schema(_) => Failure::input(message),
            Error::BoundViolation { layers, w, instance } => Self {
                code: 4,
                body: json!({
                    "error": "bound_violation",
                    "message": message,
                    "layers": layers,
                    "w": w,
                    "instance": PermDocument::from_permutation(&instance, None),
                }),
            },
            _ => Self {
                code: 3,
                body: json!({ "error": "invariant", "message": message }),
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Index { input, jstar, sweep } => {
            let p = load(input.as_ref())?;
            match sweep {
                Some(range) => print_json(&Sweep::new(&p, parse_range(&range)?)),
                None => print_json(&Report::new(&p, jstar)),
            }
            Ok(0)
        }
        Command::Center { input } => {
            print_json(&CenterReport::new(&load(input.as_ref())?));
            Ok(0)
        }
        Command::Factor { input, mode } => {
            let mode = match mode {
                Mode::Bc => FactorMode::Bc,
                Mode::Layers => FactorMode::Layers,
            };
            print_json(&FactorReport::new(&load(input.as_ref())?, mode)?);
            Ok(0)
        }
        Command::Verify { input, trials, seed } => {
            let p = input.as_ref().map(|path| load(Some(path))).transpose()?;
            let report = verify::run(p.as_ref(), trials, seed);
            print_json(&report);
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Render { input, format, rows } => {
            let p = load(input.as_ref())?;
            let rows = match rows {
                Some(text) => parse_range(&text)?,
                None => default_rows(&p),
            };
            let text = match format {
                Format::Ascii => render::ascii(&p, rows),
                Format::Dot => render::dot(&p, rows),
            };
            print!("{text}");
            Ok(0)
        }
        Command::Examples { name: Some(name) } => {
            let doc = fixture_document(&name).ok_or_else(|| {
                let known: Vec<&str> = FIXTURES.iter().map(|f| f.name).collect();
                Failure::input(format!("unknown example {name:?}; known: {}", known.join(", ")))
            })?;
            println!("{}", doc.to_json());
            Ok(0)
        }
        Command::Examples { name: None } => {
            for f in FIXTURES {
                let tag = if f.reconstructed { " [reconstructed]" } else { "" };
                println!("{}{tag}: {}", f.name, f.description);
            }
            Ok(0)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<BandedPermutation, Failure> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::input(format!("stdin: {e}")))?;
            buf
        }
    };
    Ok(PermDocument::parse(&text)?.to_permutation()?)
}

fn parse_range(text: &str) -> Result<Range<i64>, Failure> {
    let bad = || Failure::input(format!("expected LO:HI with LO < HI, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo >= hi || hi - lo > 10_000 {
        return Err(bad());
    }
    Ok(lo..hi)
}

fn default_rows(p: &BandedPermutation) -> Range<i64> {
    let core = p.core_range();
    let w = p.bandwidth().max(1);
    if core.is_empty() {
        -w..w + 1
    } else {
        core.start - w..core.end + w
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("reports always serialize"));
}
