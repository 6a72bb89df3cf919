//! Command-line front end. Exit codes: 0 consistent or valid, 1 inconsistency
//! or invalid certificate, 2 budget exhausted, 3 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certificate::{check_certificate, WitnessCertificate};
use crate::circle_map::{CircleMapError, MAX_RETRIES};
use crate::complex::SimplicialComplex;
use crate::homology::homology_summary;
use crate::library::{generate, GeneratorSpec};
use crate::theorem::{theorem_check_with_limit, TheoremError, TheoremReport};
use crate::witness::{full_pipeline, WitnessError, WitnessOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Default cap on domains examined by `verify`.
pub const DEFAULT_LIMIT: usize = 5_000_000;

#[derive(Debug, Parser)]
#[command(name = "h1cut", version, about = "First cohomology and non-cutting domains of simplicial manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers, torsion of H_1 and whether H^1 vanishes.
    H1 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the cutting behaviour of small domains with H^1.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Largest domain examined, in facets (default: all).
        #[arg(long = "max", value_parser = clap::value_parser!(u64).range(1..))]
        max_facets: Option<u64>,
        /// Give up after this many candidate domains.
        #[arg(long, default_value_t = DEFAULT_LIMIT as u64, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Build a certified non-cutting domain and its winding cocycle.
    Witness {
        #[command(flatten)]
        input: Input,
        /// Extra subdivisions allowed when separating or unwrapping.
        #[arg(long, default_value_t = MAX_RETRIES as u8, value_parser = clap::value_parser!(u8).range(0..=MAX_RETRIES as i64))]
        retries: u8,
        /// Largest domain tried by the enumeration fallback.
        #[arg(long = "max", default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        max_facets: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Re-verify a witness certificate from scratch.
    CheckCertificate {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write a bundled triangulation in .sc format.
    Generate {
        #[arg(long = "gen", value_name = "NAME[:PARAM]")]
        generator: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// A complex in .sc format.
    pub path: Option<PathBuf>,
    /// A bundled generator: sphere:D, torus2, rp2, klein, genus:G, torus3.
    #[arg(long = "gen", value_name = "NAME[:PARAM]")]
    pub generator: Option<String>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long)]
    pub json: bool,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Failure(i32, String);

impl Input {
    fn load(&self) -> Result<SimplicialComplex, Failure> {
        let input_error = |m: String| Failure(EXIT_INPUT, m);
        match (&self.path, &self.generator) {
            (_, Some(g)) => {
                let spec: GeneratorSpec = g.parse().map_err(|e| input_error(format!("{e}")))?;
                generate(spec).map_err(|e| input_error(format!("{e}")))
            }
            (Some(p), None) => {
                let text = fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
                SimplicialComplex::parse_sc(&text).map_err(|e| input_error(format!("{}: {e}", p.display())))
            }
            (None, None) => Err(input_error("no input given".into())),
        }
    }

    fn load_manifold(&self) -> Result<SimplicialComplex, Failure> {
        let k = self.load()?;
        if !k.validate().is_admissible() {
            return Err(Failure(EXIT_INPUT, "input is not a closed connected pseudomanifold".into()));
        }
        Ok(k)
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure(EXIT_INPUT, e.to_string())),
    }
}

fn plain_report(r: &TheoremReport) -> String {
    let mut s = format!(
        "betti {:?}\nh1_trivial {}\nscan {:?} max {} tested {}\nconnected domains with disconnected boundary {}\ncutting domains with connected boundary {}\nnon-cutting witnesses {}\n",
        r.betti,
        r.h1_trivial,
        r.scan_mode,
        r.max_facets,
        r.candidates_tested,
        r.disconnected_boundary_domains,
        r.connected_boundary_cuts,
        r.non_cutting_witnesses.len()
    );
    for w in &r.non_cutting_witnesses {
        s.push_str(&format!("  {:?}\n", w.domain));
    }
    s.push_str(&format!("consistent {}\n", r.consistent));
    s
}

fn run_command(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::H1 { input, output } => {
            let k = input.load()?;
            let r = homology_summary(&k);
            let text = if output.json {
                json(&r)
            } else {
                let torsion: Vec<String> = r.h1_torsion.iter().map(|t| t.to_string()).collect();
                format!("betti {:?}\nh1_torsion [{}]\nh1_trivial {}\n", r.betti, torsion.join(", "), r.h1_trivial)
            };
            emit(&text, output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify { input, max_facets, limit, output } => {
            let k = input.load_manifold()?;
            let max = max_facets.map_or(k.facet_count(), |m| m as usize);
            let (report, code) = match theorem_check_with_limit(&k, max, Some(limit as usize)) {
                Ok(r) => {
                    let code = if r.consistent { EXIT_OK } else { EXIT_INCONSISTENT };
                    (r, code)
                }
                Err(TheoremError::BudgetExceeded { partial }) => {
                    let code = if partial.consistent { EXIT_BUDGET } else { EXIT_INCONSISTENT };
                    (*partial, code)
                }
                Err(e @ TheoremError::Precondition(_)) => return Err(Failure(EXIT_INPUT, e.to_string())),
            };
            let text = if output.json { json(&report) } else { plain_report(&report) };
            emit(&text, output.out.as_deref(), stdout)?;
            if code == EXIT_INCONSISTENT {
                eprintln!("error: non-cutting domain with disconnected boundary on a complex with trivial H^1");
            }
            Ok(code)
        }
        Command::Witness { input, retries, max_facets, output } => {
            let k = input.load_manifold()?;
            let options = WitnessOptions {
                full_pipeline: true,
                fallback_max_facets: max_facets as usize,
                retries: retries as usize,
                ..WitnessOptions::default()
            };
            let result = full_pipeline(&k, &options).map_err(|e| {
                let code = match e {
                    WitnessError::PreconditionViolated(_) => EXIT_INPUT,
                    WitnessError::SearchExhausted { .. }
                    | WitnessError::CircleMap(CircleMapError::AmbientTooLarge { .. })
                    | WitnessError::CircleMap(CircleMapError::CannotSeparate { .. })
                    | WitnessError::CircleMap(CircleMapError::NoWrapFixpoint { .. }) => EXIT_BUDGET,
                    _ => EXIT_INCONSISTENT,
                };
                Failure(code, e.to_string())
            })?;
            let cert = &result.certificate;
            let text = if output.json || output.out.is_some() {
                let mut s = cert.to_json();
                s.push('\n');
                s
            } else {
                format!(
                    "domain of {} facets on subdivision depth {}\nboundary components {}\ncuts {}\npairing {}\ncrossings {}\n",
                    cert.domain.len(),
                    cert.subdivision_depth,
                    cert.cut.boundary_components,
                    cert.cut.cuts,
                    result.circle_map.pairing_value,
                    result.circle_map.crossing_count
                )
            };
            emit(&text, output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::CheckCertificate { path, output } => {
            let text = fs::read_to_string(&path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            let cert = WitnessCertificate::from_json(&text)
                .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            let verdict = check_certificate(&cert);
            let text = match (&verdict, output.json) {
                (Ok(()), true) => json(&serde_json::json!({ "valid": true })),
                (Err(e), true) => json(&serde_json::json!({ "valid": false, "reason": e.to_string() })),
                (Ok(()), false) => "valid\n".to_string(),
                (Err(e), false) => format!("invalid: {e}\n"),
            };
            emit(&text, output.out.as_deref(), stdout)?;
            Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Command::Generate { generator, out } => {
            let spec: GeneratorSpec = generator.parse().map_err(|e| Failure(EXIT_INPUT, format!("{e}")))?;
            let k = generate(spec).map_err(|e| Failure(EXIT_INPUT, format!("{e}")))?;
            emit(&k.to_sc(), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            code
        }
    }
}
