//! `patsat` command-line tool.
//!
//! Matrix arguments are a file path, `-` for standard input, or `@NAME` for a
//! catalog entry. Exit status: 0 success (and "contains" for `contains`),
//! 1 "avoids" for `contains`, 2 usage, input or format errors, 3 contract or
//! witness errors, 4 search budget exhausted.

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use patsat::report::ReportTable;
use patsat::{catalog, Matrix, Pattern, SearchBudget, SymmetryGroup};
use serde_json::json;

#[derive(Parser)]
#[command(name = "patsat", version, about = "Saturation tools for 0-1 matrix patterns")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Print only the essential result (nothing at all for `contains`).
    #[arg(long, short, global = true)]
    quiet: bool,

    /// Largest grid (m * n) the exact searches accept.
    #[arg(long, global = true, default_value_t = SearchBudget::default().max_cells)]
    max_cells: usize,

    /// Wall-clock limit for the exact searches, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_limit: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Structural label of a pattern.
    Classify { pattern: String },
    /// Find an occurrence of PATTERN in MATRIX. Exits 1 if MATRIX avoids it.
    Contains { matrix: String, pattern: String },
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Greedily add 1-entries until MATRIX is saturated for PATTERN.
    Saturate { matrix: String, pattern: String },
    /// Minimum weight of an m x n matrix saturated for PATTERN.
    SatExact { pattern: String, m: usize, n: usize },
    /// Maximum weight of an m x n matrix avoiding PATTERN.
    ExExact { pattern: String, m: usize, n: usize },
    /// Classify not-once-separable permutation matrices up to symmetry.
    Report {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = Group::Reflect)]
        group: Group,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Build W(P) from a square pattern.
    Construct { pattern: String },
    /// Report expandable lines and the witness class of MATRIX.
    Verify { matrix: String, pattern: String },
    /// Combine a horizontal and a vertical witness into a full witness.
    Compose {
        horizontal: String,
        vertical: String,
        pattern: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Reflect,
    RotReflect,
    Full,
}

impl From<Group> for SymmetryGroup {
    fn from(g: Group) -> Self {
        match g {
            Group::Reflect => SymmetryGroup::ReflectionsOnly,
            Group::RotReflect => SymmetryGroup::RotationsAndReflections,
            Group::Full => SymmetryGroup::Full,
        }
    }
}

/// Resolves matrix arguments, allowing standard input to be read once.
#[derive(Default)]
struct Sources {
    stdin_used: bool,
}

impl Sources {
    fn matrix(&mut self, source: &str) -> anyhow::Result<Matrix> {
        if let Some(name) = source.strip_prefix('@') {
            return Ok(catalog::builtin(name)?.matrix.clone());
        }
        let text = if source == "-" {
            if self.stdin_used {
                bail!(Usage("standard input can only be used for one argument".into()));
            }
            self.stdin_used = true;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading standard input")?;
            buf
        } else {
            std::fs::read_to_string(Path::new(source)).with_context(|| format!("reading {source}"))?
        };
        let m = patsat::parse_matrix(&text).with_context(|| format!("in {source}"))?;
        Ok(m)
    }

    fn pattern(&mut self, source: &str) -> anyhow::Result<Pattern> {
        let m = self.matrix(source)?;
        Pattern::new(m).with_context(|| format!("pattern {source}"))
    }
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn print_json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn budget(opts: &GlobalOpts) -> anyhow::Result<SearchBudget> {
    let time_limit = match opts.time_limit {
        Some(s) if !(s.is_finite() && s > 0.0) => bail!(Usage(format!("--time-limit must be positive, got {s}"))),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(SearchBudget {
        max_cells: opts.max_cells,
        time_limit,
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let opts = &cli.opts;
    let mut src = Sources::default();
    let sat = matches!(cli.command, Command::SatExact { .. });
    match cli.command {
        Command::Classify { pattern } => {
            let label = patsat::ClassLabel::of(&src.pattern(&pattern)?);
            if opts.json {
                print_json(&label)?;
            } else {
                println!("{label}");
            }
        }
        Command::Contains { matrix, pattern } => {
            let m = src.matrix(&matrix)?;
            let p = src.pattern(&pattern)?;
            let found = patsat::contains(&m, &p);
            if opts.json {
                print_json(&json!({ "contains": found.is_some(), "occurrence": found }))?;
            } else if !opts.quiet {
                match &found {
                    Some(occ) => println!("{occ}"),
                    None => println!("AVOIDS"),
                }
            }
            if found.is_none() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Witness(WitnessCommand::Construct { pattern }) => {
            let c = patsat::construct_w(&src.pattern(&pattern)?)?;
            if opts.json {
                print_json(&c)?;
            } else {
                println!("{}", patsat::format_matrix(&c.result));
                if !opts.quiet {
                    let empty = c.empty_row.map_or("none".to_string(), |r| (r + 1).to_string());
                    println!(
                        "# k {} s {} t {} reflected {} empty row {}",
                        c.k,
                        c.s + 1,
                        c.t + 1,
                        c.reflected,
                        empty
                    );
                }
            }
        }
        Command::Witness(WitnessCommand::Verify { matrix, pattern }) => {
            let m = src.matrix(&matrix)?;
            let report = patsat::verify(&m, &src.pattern(&pattern)?);
            if opts.json {
                print_json(&report)?;
            } else {
                println!("{report}");
            }
        }
        Command::Witness(WitnessCommand::Compose {
            horizontal,
            vertical,
            pattern,
        }) => {
            let h = src.matrix(&horizontal)?;
            let v = src.matrix(&vertical)?;
            let out = patsat::compose(&h, &v, &src.pattern(&pattern)?)?;
            if opts.json {
                print_json(&json!({ "dims": out.dims(), "matrix": out }))?;
            } else {
                println!("{}", patsat::format_matrix(&out));
            }
        }
        Command::Saturate { matrix, pattern } => {
            let m = src.matrix(&matrix)?;
            let out = patsat::saturate(&m, &src.pattern(&pattern)?)?;
            if opts.json {
                print_json(&json!({ "weight": out.weight(), "matrix": out }))?;
            } else {
                println!("{}", patsat::format_matrix(&out));
                if !opts.quiet {
                    println!("# weight {}", out.weight());
                }
            }
        }
        Command::SatExact { pattern, m, n } | Command::ExExact { pattern, m, n } => {
            let p = src.pattern(&pattern)?;
            let budget = budget(opts)?;
            let result = if sat {
                patsat::sat_exact(&p, m, n, &budget)?
            } else {
                patsat::ex_exact(&p, m, n, &budget)?
            };
            if opts.json {
                print_json(&result)?;
            } else {
                println!("{}", result.value);
                if !opts.quiet {
                    println!("{}", patsat::format_matrix(&result.matrix));
                }
            }
        }
        Command::Report { max_size, group } => {
            let rows = patsat::classification_report(max_size, group.into())?;
            if opts.json {
                print_json(&rows)?;
            } else if opts.quiet {
                let certified = rows.iter().filter(|r| r.certificate.is_some()).count();
                println!("{} classes, {} certified", rows.len(), certified);
            } else {
                println!("{}", ReportTable(&rows));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<Usage>() || e.is::<std::io::Error>()) {
        return 2;
    }
    match err.chain().find_map(|e| e.downcast_ref::<patsat::Error>()) {
        Some(patsat::Error::Format { .. } | patsat::Error::UnknownName { .. }) => 2,
        Some(patsat::Error::Contract(_) | patsat::Error::Witness { .. }) => 3,
        Some(patsat::Error::Budget { .. }) => 4,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
