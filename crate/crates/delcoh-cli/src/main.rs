//! Command line front end for the `delcoh` library.
//!
//! Reads a line-oriented JSON workspace describing complexes, maps,
//! characters and cycles, then runs one of four commands: `cohomology` and
//! `relative` print group invariants, `holonomy` evaluates a character on a
//! cycle, and `verify` runs the long-sequence and diagram batteries and
//! prints their deterministic reports.
//!
//! Exit codes: 0 on success with every verification check passing, 1 for
//! parse or validation failures (including a failing verification report),
//! 2 for unknown names, 3 for mathematical precondition violations.

mod workspace;

use clap::{Parser, Subcommand, ValueEnum};
use delcoh::characters::rel_holonomy;
use delcoh::cone::relative_cohomology;
use delcoh::report::VerificationReport;
use delcoh::sequences::{verify_les4, verify_mixed_les, verify_thm_diagram, MixedSequence};
use delcoh::simplicial::{cohomology, CoefficientRing, RelativeCycle};
use std::path::PathBuf;
use workspace::{CharacterEntry, CycleEntry, Workspace};

#[derive(Parser)]
#[command(
    name = "delcoh",
    version,
    about = "Exact-arithmetic differential characters on simplicial pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print cohomology invariants of a named complex.
    Cohomology {
        /// Workspace file (one JSON record per line).
        #[arg(long)]
        workspace: PathBuf,
        /// Name of the complex inside the workspace.
        #[arg(long)]
        complex: String,
        /// Cohomological degree.
        #[arg(long)]
        degree: usize,
        /// Coefficient ring.
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print relative cohomology invariants of a named map.
    Relative {
        /// Workspace file (one JSON record per line).
        #[arg(long)]
        workspace: PathBuf,
        /// Name of the map inside the workspace.
        #[arg(long)]
        map: String,
        /// Cohomological degree.
        #[arg(long)]
        degree: usize,
        /// Coefficient ring.
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a character on a cycle, mod 1.
    Holonomy {
        /// Workspace file (one JSON record per line).
        #[arg(long)]
        workspace: PathBuf,
        /// Name of the character inside the workspace.
        #[arg(long)]
        character: String,
        /// Name of the cycle inside the workspace.
        #[arg(long)]
        cycle: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the sequence and diagram verification batteries for a map.
    Verify {
        /// Workspace file (one JSON record per line).
        #[arg(long)]
        workspace: PathBuf,
        /// Name of the map inside the workspace.
        #[arg(long)]
        map: String,
        /// Character degree of the batteries.
        #[arg(long)]
        degree: usize,
        /// Which battery to run.
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Number of random samples per element-level check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Random seed (the DELCOH_SEED environment variable overrides it).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Z,
    Q,
    Rz,
}

impl Coeff {
    fn ring(self) -> CoefficientRing {
        match self {
            Coeff::Z => CoefficientRing::Z,
            Coeff::Q => CoefficientRing::Q,
            Coeff::Rz => CoefficientRing::RZ,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Coeff::Z => "Z",
            Coeff::Q => "Q",
            Coeff::Rz => "R/Z",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Les1,
    Les2,
    Les3,
    Les4,
    Diagram,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct CmdError {
    code: i32,
    message: String,
}

impl CmdError {
    fn new(code: i32, message: impl Into<String>) -> CmdError {
        CmdError {
            code,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn load(path: &PathBuf) -> Result<Workspace, CmdError> {
    Workspace::load(path)
        .map_err(|e| CmdError::new(e.exit_code(), format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<i32, CmdError> {
    match command {
        Command::Cohomology {
            workspace,
            complex,
            degree,
            coeff,
            format,
        } => {
            let ws = load(&workspace)?;
            let k = ws
                .complexes
                .get(&complex)
                .ok_or_else(|| CmdError::new(2, format!("unknown complex {complex:?}")))?;
            let group = cohomology(k, degree, coeff.ring());
            match format {
                Format::Text => println!("{group}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "complex": complex,
                        "degree": degree,
                        "coefficients": coeff.label(),
                        "group": group.to_string(),
                    })
                ),
            }
            Ok(0)
        }
        Command::Relative {
            workspace,
            map,
            degree,
            coeff,
            format,
        } => {
            let ws = load(&workspace)?;
            let f = ws
                .maps
                .get(&map)
                .ok_or_else(|| CmdError::new(2, format!("unknown map {map:?}")))?;
            let group = relative_cohomology(f, degree, coeff.ring());
            match format {
                Format::Text => println!("{group}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "map": map,
                        "degree": degree,
                        "coefficients": coeff.label(),
                        "group": group.to_string(),
                    })
                ),
            }
            Ok(0)
        }
        Command::Holonomy {
            workspace,
            character,
            cycle,
            format,
        } => {
            let ws = load(&workspace)?;
            let chr = ws
                .characters
                .get(&character)
                .ok_or_else(|| CmdError::new(2, format!("unknown character {character:?}")))?;
            let cyc = ws
                .cycles
                .get(&cycle)
                .ok_or_else(|| CmdError::new(2, format!("unknown cycle {cycle:?}")))?;
            let value = match (chr, cyc) {
                (
                    CharacterEntry::Absolute {
                        complex: ca,
                        character: chi,
                    },
                    CycleEntry::Absolute { complex: cb, chain },
                ) => {
                    if ca != cb {
                        return Err(CmdError::new(
                            3,
                            format!("character lives on {ca:?} but the cycle on {cb:?}"),
                        ));
                    }
                    chi.holonomy(chain).map_err(|e| CmdError::new(3, e.to_string()))?
                }
                (
                    CharacterEntry::Relative {
                        map: ma,
                        character: r,
                    },
                    CycleEntry::Relative {
                        map: mb,
                        chain_x,
                        chain_y,
                    },
                ) => {
                    if ma != mb {
                        return Err(CmdError::new(
                            3,
                            format!("character lives on map {ma:?} but the cycle on {mb:?}"),
                        ));
                    }
                    let rc = RelativeCycle::new(r.map(), chain_x.clone(), chain_y.clone())
                        .map_err(|e| CmdError::new(3, format!("invalid relative cycle: {e}")))?;
                    rel_holonomy(r, &rc).map_err(|e| CmdError::new(3, e.to_string()))?
                }
                (CharacterEntry::Absolute { .. }, CycleEntry::Relative { .. }) => {
                    return Err(CmdError::new(
                        3,
                        "cannot pair an absolute character with a relative cycle",
                    ))
                }
                (CharacterEntry::Relative { .. }, CycleEntry::Absolute { .. }) => {
                    return Err(CmdError::new(
                        3,
                        "cannot pair a relative character with an absolute cycle",
                    ))
                }
            };
            match format {
                Format::Text => println!("{value}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "character": character,
                        "cycle": cycle,
                        "holonomy": value.to_string(),
                    })
                ),
            }
            Ok(0)
        }
        Command::Verify {
            workspace,
            map,
            degree,
            which,
            samples,
            seed,
            format,
        } => {
            let ws = load(&workspace)?;
            let f = ws
                .maps
                .get(&map)
                .ok_or_else(|| CmdError::new(2, format!("unknown map {map:?}")))?;
            if degree == 0 {
                return Err(CmdError::new(3, "verification batteries need --degree >= 1"));
            }
            let seed = match std::env::var("DELCOH_SEED") {
                Ok(s) => s.trim().parse::<u64>().map_err(|_| {
                    CmdError::new(1, format!("DELCOH_SEED must be an unsigned integer, got {s:?}"))
                })?,
                Err(_) => seed,
            };
            let mut reports: Vec<VerificationReport> = Vec::new();
            let sequences = [
                MixedSequence::Les1,
                MixedSequence::Les2,
                MixedSequence::Les3,
            ];
            match which {
                Which::Les1 => reports.push(verify_mixed_les(f, degree, sequences[0], samples, seed)),
                Which::Les2 => reports.push(verify_mixed_les(f, degree, sequences[1], samples, seed)),
                Which::Les3 => reports.push(verify_mixed_les(f, degree, sequences[2], samples, seed)),
                Which::Les4 => reports.push(verify_les4(f, degree, samples, seed)),
                Which::Diagram => reports.push(verify_thm_diagram(f, degree, samples, seed)),
                Which::All => {
                    for s in sequences {
                        reports.push(verify_mixed_les(f, degree, s, samples, seed));
                    }
                    reports.push(verify_les4(f, degree, samples, seed));
                    reports.push(verify_thm_diagram(f, degree, samples, seed));
                }
            }
            for r in &mut reports {
                r.input_sha256 = Some(ws.sha256.clone());
            }
            let passed = reports.iter().all(|r| r.passed);
            match format {
                Format::Text => {
                    for (i, r) in reports.iter().enumerate() {
                        if i > 0 {
                            println!();
                        }
                        print!("{}", r.render_text());
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&reports)
                        .expect("reports serialize without errors")
                ),
            }
            Ok(if passed { 0 } else { 1 })
        }
    }
}
