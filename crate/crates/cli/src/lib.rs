//! Command-line front end: argument parsing, file I/O and exit codes.
//!
//! Exit status is 0 on success, 1 for validation failures (bad flags,
//! unreadable or malformed input, a binding check that fails) and 2 when an
//! instance is too large or a node budget runs out.

pub mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};

use cakecut::bounds::{
    check_lemma, check_superadditivity, default_r0, gains_report, partition_indices, RecurrenceTable,
};
use cakecut::heuristics::{best_greedy, greedy_bob, OrderPolicy};
use cakecut::solver::{exact_bob, DEFAULT_NODE_BUDGET, HARD_MAX_POINTS};
use cakecut::staircase::decompose;
use cakecut::strategies::{grid_case_exhaustive, search_alice, SearchConfig};
use cakecut::{validate_packing, Error, Instance, Packing, Scalar};

use crate::render::{render_svg, Overlay};

#[derive(Parser, Debug)]
#[command(name = "cakecut", version, about = "Anchored rectangle packing experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pack anchored rectangles for an instance.
    #[command(group(ArgGroup::new("method").required(true).args(["exact", "greedy"])))]
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        /// Greedy ordering; all policies are tried when omitted.
        #[arg(long, requires = "greedy")]
        policy: Option<OrderPolicy>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Staircase metrics and strip decomposition.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate one of the staircase inequalities.
    #[command(group(ArgGroup::new("which").required(true).args(["hyperbola", "lemma", "superadd", "gains"])))]
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        hyperbola: bool,
        #[arg(long)]
        lemma: bool,
        #[arg(long)]
        superadd: bool,
        #[arg(long, value_name = "R")]
        gains: Option<Scalar>,
        /// Premise threshold; defaults to the scanned value.
        #[arg(long, value_name = "R0")]
        r0: Option<Scalar>,
    },
    /// Minimum over all n-point grid instances.
    Gridcase {
        #[arg(long)]
        n: usize,
    },
    /// Seeded local search for instances with a small optimum.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        iters: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long, default_value = "1/16")]
        step: Scalar,
        #[arg(long)]
        out_instance: Option<PathBuf>,
        #[arg(long)]
        out_trace: Option<PathBuf>,
    },
    /// Tabulate the doubling recurrence.
    Table {
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Draw an instance as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "decomposition")]
        packing: Option<PathBuf>,
        #[arg(long)]
        decomposition: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failed command: exit status plus a one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::TooLarge { .. } | Error::BudgetExhausted => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> std::result::Result<Instance, Failure> {
    Instance::parse(&read(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn ensure_solvable(inst: &Instance) -> std::result::Result<(), Failure> {
    if inst.len() > HARD_MAX_POINTS {
        return Err(Error::TooLarge {
            points: inst.len(),
            limit: HARD_MAX_POINTS,
        }
        .into());
    }
    Ok(())
}

/// Runs the command line `argv` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return 1;
        }
    };
    match execute(cli.command, err) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: Command, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Solve {
            input,
            exact,
            policy,
            seed,
            budget,
            ..
        } => {
            let inst = load_instance(&input)?;
            if exact {
                let r = exact_bob(&inst, budget)?;
                if !r.optimal {
                    return Err(Failure {
                        code: 2,
                        message: format!(
                            "node budget {budget} exhausted; best value found {}",
                            r.value.with_decimal()
                        ),
                    });
                }
                Ok(r.report())
            } else {
                ensure_solvable(&inst)?;
                let r = match policy {
                    Some(p) => greedy_bob(&inst, p, seed),
                    None => best_greedy(&inst, seed),
                };
                Ok(r.report())
            }
        }
        Command::Decompose { input } => Ok(decompose(&load_instance(&input)?).report()),
        Command::Check {
            input,
            hyperbola,
            lemma,
            superadd,
            gains,
            r0,
        } => {
            let inst = load_instance(&input)?;
            let r0 = r0.unwrap_or_else(default_r0);
            let dec = decompose(&inst);
            let (text, ok) = if hyperbola || lemma {
                let report = check_lemma(&dec, &r0);
                let mut text = report.to_text();
                let ok = if hyperbola {
                    report.hyperbola_holds
                } else {
                    if report.lemma_holds() {
                        let p = partition_indices(&dec, &r0)?;
                        let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
                        writeln!(text, "partition_first {} sum {}", one_based(&p.first), p.first_sum.with_decimal()).unwrap();
                        writeln!(text, "partition_second {} sum {}", one_based(&p.second), p.second_sum.with_decimal()).unwrap();
                    } else if let Some(i) = report.failing_strip {
                        writeln!(text, "failing_strip {}", i + 1).unwrap();
                    }
                    !report.premise_met || report.lemma_holds()
                };
                (text, ok)
            } else if superadd {
                ensure_solvable(&inst)?;
                let report = check_superadditivity(&inst)?;
                (report.to_text(), report.holds)
            } else {
                let r = gains.expect("clap enforces one check");
                ensure_solvable(&inst)?;
                let report = gains_report(&inst, &r)?;
                let ok = !report.binding() || report.holds;
                (report.to_text(), ok)
            };
            if ok {
                Ok(text)
            } else {
                let _ = err.write_all(text.as_bytes());
                Err(Failure::validation("check failed"))
            }
        }
        Command::Gridcase { n } => {
            let r = grid_case_exhaustive(n)?;
            let pi = r.best_pi.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            Ok(format!(
                "n {n}\npermutations {}\nmin {}\npi {}\n",
                r.permutations,
                r.min_value.with_decimal(),
                if pi.is_empty() { "-".into() } else { pi }
            ))
        }
        Command::Search {
            n,
            iters,
            seed,
            restarts,
            step,
            out_instance,
            out_trace,
        } => {
            let cfg = SearchConfig {
                n,
                iterations: iters,
                seed,
                step,
                restarts,
            };
            let r = search_alice(&cfg)?;
            let instance_text = r.instance_file(&cfg);
            if let Some(path) = &out_trace {
                write(path, &r.trace_file(&cfg))?;
            }
            match &out_instance {
                Some(path) => {
                    write(path, &instance_text)?;
                    Ok(format!("value {}\nrestart {}\n", r.best_value.with_decimal(), r.restart))
                }
                None => Ok(instance_text),
            }
        }
        Command::Table { rmin, rmax, step } => Ok(RecurrenceTable::build(rmin, rmax, step)?.to_text()),
        Command::Render {
            input,
            packing,
            decomposition,
            out,
        } => {
            let inst = load_instance(&input)?;
            let svg = match (&packing, decomposition) {
                (Some(path), _) => {
                    let p = Packing::parse(&read(path)?).map_err(|e| {
                        let mut f = Failure::from(e);
                        f.message = format!("{}: {}", path.display(), f.message);
                        f
                    })?;
                    let svg = render_svg(&inst, Overlay::Packing(&p))?;
                    let report = validate_packing(&inst, &p);
                    if let Some(v) = &report.violation {
                        let _ = writeln!(err, "warning: packing infeasible: {v}");
                    }
                    svg
                }
                (None, true) => render_svg(&inst, Overlay::Decomposition(&decompose(&inst)))?,
                (None, false) => render_svg(&inst, Overlay::None)?,
            };
            write(&out, &svg)?;
            Ok(String::new())
        }
    }
}
