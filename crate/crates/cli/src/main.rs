//! `planetame`: decide tameness of plane polynomial automorphisms from the
//! command line.

mod commands;
mod grammar;
mod report;
mod rings;
mod verify;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Outcome, EXIT_OK, EXIT_UNKNOWN};
use planetame::{Domain, PolyMap};
use report::Report;
use rings::{with_pid, with_ring, RingFlag, RING_HELP};

#[derive(Parser, Debug)]
#[command(
    name = "planetame",
    version,
    about = "Tameness of polynomial automorphisms of the plane over rings"
)]
struct Cli {
    /// Coefficient ring.
    #[arg(long, global = true, help = format!("Coefficient ring: {RING_HELP}"))]
    ring: Option<RingFlag>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print the report as indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Read maps from this file instead of stdin.
    #[arg(long = "in", value_name = "FILE")]
    file: Option<PathBuf>,
    /// A map given inline; may be repeated.
    #[arg(long = "map", value_name = "MAP")]
    maps: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse maps and print them in canonical form.
    Parse(Input),
    /// Compose maps: F1 ∘ F2 ∘ ... (F1 applied last).
    Compose(Input),
    /// Inverse of an automorphism.
    Inverse(Input),
    /// Whether a map is an automorphism of R[X, Y].
    IsAutomorphism(Input),
    /// Decide tameness over the ring.
    IsTame {
        #[command(flatten)]
        input: Input,
        /// Also report the degree pair at every reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Decide tameness over the localization at a prime.
    IsLocallyTame {
        #[command(flatten)]
        input: Input,
        /// The prime: one element, or comma-separated generators.
        #[arg(long)]
        prime: String,
    },
    /// Tame decomposition, with adjacent affine factors merged.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Keep the factors exactly as the reduction produced them.
        #[arg(long)]
        raw: bool,
    },
    /// Smallest R[1/r] over which the map is tame (principal ideal domains).
    MinimalOverring(Input),
    /// Named example maps.
    Gallery {
        #[command(subcommand)]
        which: Gallery,
    },
    /// Run the randomized property batteries.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per battery.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Gallery {
    /// (X - 2Y T - z T^2, Y + z T) with T = zX + Y^2.
    Nagata {
        /// The coefficient z (defaults to the generator z).
        #[arg(long)]
        z: Option<String>,
    },
    /// (X + w q(zX + wY), Y - z q(zX + wY)).
    CanEx {
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
        /// Coefficients of q, constant term first, comma-separated.
        #[arg(long)]
        q: String,
    },
    /// The family member over Q[t^2, t^3] for the ideal (t^2 - a^2, t^3 - a^3).
    Cuspidal {
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "0, 0, 1")]
        q: String,
    },
}

fn read_input(input: &Input) -> Result<String, CliError> {
    if !input.maps.is_empty() {
        return Ok(input.maps.join("\n"));
    }
    match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load<D: Domain>(dom: &D, text: &str) -> Result<Vec<PolyMap<D::Elem>>, CliError> {
    grammar::parse_maps(dom, text).map_err(CliError::parse("input", text))
}

fn load_one<D: Domain>(dom: &D, text: &str) -> Result<PolyMap<D::Elem>, CliError> {
    let mut maps = load(dom, text)?;
    if maps.len() != 1 {
        return Err(CliError::Input(format!(
            "expected exactly one map, found {}",
            maps.len()
        )));
    }
    Ok(maps.remove(0))
}

fn require_ring(ring: &Option<RingFlag>) -> Result<&RingFlag, CliError> {
    ring.as_ref()
        .ok_or_else(|| CliError::Unsupported(format!("--ring is required ({RING_HELP})")))
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let bad_ring = |s: String| CliError::Unsupported(s);
    match &cli.cmd {
        Cmd::Verify { seed, count } => {
            if cli.ring.is_some() {
                return Err(CliError::Unsupported(
                    "verify chooses its own rings; drop --ring".to_string(),
                ));
            }
            let batteries = verify::run(*seed, *count);
            let failed = batteries.iter().any(|b| b.failed > 0);
            let mut r = Report::new("verify", "various".to_string());
            r.seed = Some(*seed);
            r.count = Some(*count);
            r.batteries = Some(batteries);
            Ok(Outcome {
                report: r,
                exit: if failed { EXIT_UNKNOWN } else { EXIT_OK },
            })
        }
        Cmd::Gallery {
            which: Gallery::Cuspidal { a, q },
        } => {
            if cli.ring.as_ref().is_some_and(|r| *r != RingFlag::Cusp) {
                return Err(CliError::Unsupported(
                    "the cuspidal example lives over --ring cusp".to_string(),
                ));
            }
            commands::gallery_cuspidal(a, q)
        }
        Cmd::Gallery { which } => {
            let flag = require_ring(&cli.ring)?;
            with_ring!(flag, bad_ring, |dom| match which {
                Gallery::Nagata { z } => commands::gallery_nagata(&dom, z.as_deref()),
                Gallery::CanEx { z, w, q } => commands::gallery_can_ex(&dom, z, w, q),
                Gallery::Cuspidal { .. } => unreachable!(),
            })
        }
        Cmd::MinimalOverring(input) => {
            let flag = require_ring(&cli.ring)?;
            let text = read_input(input)?;
            with_pid!(
                flag,
                bad_ring,
                |dom| commands::overring(&dom, &load_one(&dom, &text)?),
                Err(CliError::Unsupported(format!(
                    "minimal-overring needs a principal ideal domain (Z, Z_loc, Qz, Qz_loc, Qt), not {flag}"
                )))
            )
        }
        cmd => {
            let flag = require_ring(&cli.ring)?;
            let input = match cmd {
                Cmd::Parse(i) | Cmd::Compose(i) | Cmd::Inverse(i) | Cmd::IsAutomorphism(i) => i,
                Cmd::IsTame { input, .. }
                | Cmd::IsLocallyTame { input, .. }
                | Cmd::Decompose { input, .. } => input,
                _ => unreachable!(),
            };
            let text = read_input(input)?;
            with_ring!(flag, bad_ring, |dom| match cmd {
                Cmd::Parse(_) => commands::parse(&dom, &load(&dom, &text)?),
                Cmd::Compose(_) => commands::compose(&dom, &load(&dom, &text)?),
                Cmd::Inverse(_) => commands::inverse(&dom, &load_one(&dom, &text)?),
                Cmd::IsAutomorphism(_) =>
                    commands::is_automorphism_cmd(&dom, &load_one(&dom, &text)?),
                Cmd::IsTame { trace, .. } =>
                    commands::is_tame(&dom, &load_one(&dom, &text)?, *trace),
                Cmd::IsLocallyTame { prime, .. } =>
                    commands::is_locally_tame(&dom, &load_one(&dom, &text)?, prime),
                Cmd::Decompose { raw, .. } =>
                    commands::decompose(&dom, &load_one(&dom, &text)?, *raw),
                _ => unreachable!(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json || cli.pretty;
    let print_json = |v: &serde_json::Value| {
        let s = if cli.pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        };
        println!("{}", s.expect("serializable"));
    };
    match execute(&cli) {
        Ok(Outcome { report, exit }) => {
            if json {
                print_json(&serde_json::to_value(&report).expect("serializable"));
            } else {
                print!("{}", report.human());
            }
            ExitCode::from(exit as u8)
        }
        Err(e) => {
            if json {
                print_json(&serde_json::json!({
                    "error": { "kind": e.kind(), "message": e.message(), "position": e.position() }
                }));
            }
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
