use std::collections::BTreeSet;
use std::error::Error;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altperm::{
    psi_inverse, render_ascii, render_svg, to_derangement, Alternation, Caps, Permutation,
    PermutationTableau,
};
use clap::{Parser, Subcommand};

/// Alternating permutations with many fixed points, derangements, and
/// permutation tableaux.
///
/// Enumeration caps can be raised or lowered with ALTPERM_MAX_PERM_N,
/// ALTPERM_MAX_ALT_N and ALTPERM_MAX_TABLEAU_N.
#[derive(Parser)]
#[command(name = "altperm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Send an alternating permutation with the maximum number of fixed
    /// points to its derangement.
    Psi {
        perm: String,
        /// Treat the input as reverse alternating (a1 < a2 > a3 ...).
        #[arg(long)]
        reverse: bool,
    },
    /// Send a derangement of [m] to the alternating permutation of [2m]
    /// with m fixed points.
    PsiInv { derangement: String },
    /// Decode a tableau file into its permutation.
    Phi { file: PathBuf },
    /// Lift a derangement tableau to an alternating tableau.
    Theta { file: PathBuf },
    /// Reduce an alternating tableau to its derangement tableau.
    PsiTab { file: PathBuf },
    /// Alternating permutations of [n] by number of fixed points.
    Counts {
        #[arg(long)]
        n: usize,
        /// One `n k d d_star` line per k.
        #[arg(long)]
        machine: bool,
    },
    /// Run the exhaustive checks; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// `CHECK <name> <range> <PASS|FAIL> [witness]` lines.
        #[arg(long)]
        machine: bool,
        /// Per-check timings on stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Draw a tableau as text, or as SVG with --svg.
    Render {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
        /// Overlay the zig-zag path of a label; repeatable with --svg.
        #[arg(long, value_name = "LABEL")]
        trace: Vec<usize>,
    },
}

type Outcome = Result<ExitCode, Box<dyn Error>>;

fn read_tableau(path: &Path) -> Result<PermutationTableau, Box<dyn Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text.parse()?)
}

fn emit(text: &str) -> Outcome {
    io::stdout().write_all(text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn run(command: Command) -> Outcome {
    let caps = Caps::from_env()?;
    match command {
        Command::Psi { perm, reverse } => {
            let p: Permutation = perm.parse()?;
            let pattern = if reverse {
                Alternation::ReverseAlternating
            } else {
                Alternation::Alternating
            };
            emit(&format!("{}\n", to_derangement(&p, pattern)?))
        }
        Command::PsiInv { derangement } => {
            let sigma: Permutation = derangement.parse()?;
            emit(&format!("{}\n", psi_inverse(&sigma)?))
        }
        Command::Phi { file } => emit(&format!("{}\n", read_tableau(&file)?.phi()?)),
        Command::Theta { file } => emit(&read_tableau(&file)?.theta()?.to_string()),
        Command::PsiTab { file } => emit(&read_tableau(&file)?.psi_tab()?.to_string()),
        Command::Counts { n, machine } => {
            let table = caps.counts_table(n)?;
            emit(&if machine {
                table.to_machine()
            } else {
                table.to_string()
            })
        }
        Command::Verify {
            max_n,
            machine,
            timings,
        } => {
            let report = caps.verify_all(max_n);
            if machine {
                emit(&report.to_machine())?;
            } else {
                emit(&report.to_string())?;
            }
            if timings {
                eprint!("{}", report.timings());
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Render { file, svg, trace } => {
            let t = read_tableau(&file)?;
            match svg {
                Some(out) => {
                    let traces: BTreeSet<usize> = trace.into_iter().collect();
                    let doc = render_svg(&t, &traces)?;
                    fs::write(&out, doc).map_err(|e| format!("{}: {e}", out.display()))?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    if trace.len() > 1 {
                        eprintln!(
                            "error: text rendering traces at most one label; use --svg for several"
                        );
                        return Ok(ExitCode::from(2));
                    }
                    emit(&render_ascii(&t, trace.first().copied())?)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
