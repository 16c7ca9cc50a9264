use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxeter_core::invariants::{self, DisplayCoxeterNumber};
use coxeter_core::partition::FactoredCoxPoly;
use coxeter_core::quiver::{self, Labeling};
use coxeter_core::realize::{self, RepresentativeQuivers};
use coxeter_core::sweep::{run_sweep, SweepConfig};
use coxeter_core::{Int, IntForm, IntPoly, Matrix, Partition, Quiver};
use serde::Serialize;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

/// Coxeter invariants of non-negative unit forms of Dynkin type A.
#[derive(Parser)]
#[command(name = "coxeter", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Unit form as JSON: {"n": 3, "upper": [[1, 2, -1], ...]} with entries (i, j, g_ij), i < j.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Quiver as JSON: {"vertices": 3, "arrows": [[1, 2], ...]}.
    #[arg(long)]
    quiver: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Cycle type, Coxeter polynomial, Coxeter numbers and spectrum.
    Invariants(Input),
    /// A quiver whose form is the given one.
    Realize {
        #[arg(long)]
        form: PathBuf,
    },
    /// The inverse quiver.
    Inverse {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Cycle type of a quiver or form.
    CycleType(Input),
    /// Coxeter polynomial of a form, a quiver, or a cycle type with a corank.
    CoxPoly {
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long)]
        quiver: Option<PathBuf>,
        /// Cycle type, e.g. "3,2,2"; needs --c.
        #[arg(long, conflicts_with_all = ["form", "quiver"], requires = "c")]
        pi: Option<String>,
        #[arg(long)]
        c: Option<usize>,
    },
    /// Cycle type from an expanded Coxeter polynomial.
    FromPoly {
        /// Coefficients from the constant term up, e.g. "1,-2,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        c: usize,
    },
    /// All Coxeter polynomials with n variables and corank c.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
    },
    /// The representative quiver of a cycle type and its inverse.
    Representative {
        #[arg(long)]
        pi: String,
        /// Number of antiparallel arrow pairs.
        #[arg(long, conflicts_with = "c", required_unless_present = "c")]
        d: Option<usize>,
        /// Corank; sets d = (c - len + 1) / 2.
        #[arg(long)]
        c: Option<usize>,
    },
    /// Checks every identity on all connected quivers within the bounds.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 7)]
        max_arrows: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] coxeter_core::Error),
    #[error("{0}")]
    Contradiction(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(e) if e.is_internal() => 3,
            CliError::Domain(_) => 1,
            CliError::Contradiction(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_form(input: &Input) -> Result<IntForm> {
    match (&input.form, &input.quiver) {
        (Some(path), _) => read_json(path),
        (None, Some(path)) => Ok(coxeter_core::unitform::form_of_quiver(
            &read_json::<Quiver>(path)?,
        )),
        (None, None) => Err(CliError::Usage(
            "one of --form or --quiver is required".into(),
        )),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {s:?} in {text:?}")))
        })
        .collect()
}

fn parse_partition(text: &str) -> Result<Partition> {
    Partition::new(parse_list(text, "partition")?).map_err(|e| CliError::Usage(e.to_string()))
}

fn quiver_line(q: &Quiver) -> String {
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|(s, t)| format!("{s}->{t}"))
        .collect();
    format!("{} vertices: {}", q.vertex_count(), arrows.join(" "))
}

fn matrix_lines(m: &Matrix<Int>) -> String {
    m.to_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Renders rows as left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out.pop();
    out
}

fn emit<T: Serialize>(
    format: Format,
    value: &T,
    table: impl FnOnce(&T) -> String,
) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string(value)
            .map_err(|e| CliError::Domain(coxeter_core::Error::OutOfRange(e.to_string()))),
        Format::Table => Ok(table(value)),
    }
}

fn run(cli: Cli) -> Result<String> {
    let format = cli.format;
    match cli.verb {
        Verb::Invariants(input) => {
            let inv = invariants::form_invariants(&read_form(&input)?)?;
            emit(format, &inv, |inv| {
                let spectrum: Vec<String> = inv
                    .spectrum
                    .iter()
                    .map(|(d, k)| format!("{d}:{k}"))
                    .collect();
                columns(&[
                    vec!["variables".into(), inv.variables.to_string()],
                    vec!["corank".into(), inv.corank.to_string()],
                    vec!["cycle type".into(), inv.cycle_type.to_string()],
                    vec![
                        "Coxeter polynomial".into(),
                        inv.coxeter_polynomial.to_string(),
                    ],
                    vec![
                        "Coxeter number".into(),
                        DisplayCoxeterNumber(&inv.numbers.coxeter_number).to_string(),
                    ],
                    vec![
                        "reduced Coxeter number".into(),
                        inv.numbers.reduced_coxeter_number.to_string(),
                    ],
                    vec!["root multiplicities".into(), spectrum.join(" ")],
                ])
            })
        }
        Verb::Realize { form } => {
            let res = realize::realize(&read_json::<IntForm>(&form)?)?;
            emit(format, &res, |res| {
                let mut out = format!(
                    "strategy: {}\n{}",
                    serde_json::to_value(res.strategy)
                        .unwrap_or_default()
                        .as_str()
                        .unwrap_or(""),
                    quiver_line(&res.quiver)
                );
                if let Some(b) = &res.basis_change {
                    let _ = write!(out, "\nbasis change:\n{}", matrix_lines(b));
                }
                out
            })
        }
        Verb::Inverse { quiver } => {
            let inv = quiver::inverse_quiver(&read_json(&quiver)?)?;
            emit(format, &inv, quiver_line)
        }
        Verb::CycleType(input) => {
            let ct = match (&input.form, &input.quiver) {
                (None, Some(path)) => quiver::cycle_type_of_quiver(&read_json(path)?)?,
                _ => invariants::cycle_type_of_form(&read_form(&input)?)?,
            };
            emit(format, &ct, ToString::to_string)
        }
        Verb::CoxPoly {
            form,
            quiver,
            pi,
            c,
        } => {
            let poly = match (pi, form, quiver) {
                (Some(pi), _, _) => {
                    let c = c.ok_or_else(|| CliError::Usage("--pi needs --c".into()))?;
                    let pi = parse_partition(&pi)?;
                    if !pi.fits_corank(c) {
                        return Err(coxeter_core::Error::InvalidArgument(format!(
                            "cycle type {pi} does not occur with corank {c}"
                        ))
                        .into());
                    }
                    FactoredCoxPoly::for_cycle_type(&pi, c)
                }
                (None, form, quiver) => {
                    invariants::coxeter_polynomial(&read_form(&Input { form, quiver })?)?
                }
            };
            emit(format, &poly, ToString::to_string)
        }
        Verb::FromPoly { poly, c } => {
            let coeffs: Vec<Int> = parse_list(&poly, "coefficient")?;
            let ct = invariants::cycle_type_from_cox_poly(&IntPoly::new(coeffs), c)?;
            emit(format, &ct, ToString::to_string)
        }
        Verb::Enumerate { n, c } => {
            let rows = invariants::coxeter_polynomial_table(n, c)?;
            emit(format, &rows, |rows| {
                let mut table = vec![vec![
                    "Partition".to_string(),
                    "Coxeter polynomial".to_string(),
                    "Coxeter number".to_string(),
                    "Reduced Coxeter number".to_string(),
                ]];
                table.extend(rows.iter().map(|r| {
                    vec![
                        r.cycle_type.to_string(),
                        r.polynomial.to_string(),
                        DisplayCoxeterNumber(&r.numbers.coxeter_number).to_string(),
                        r.numbers.reduced_coxeter_number.to_string(),
                    ]
                }));
                columns(&table)
            })
        }
        Verb::Representative { pi, d, c } => {
            let pi = parse_partition(&pi)?;
            let d = match (d, c) {
                (Some(d), _) => d,
                (None, Some(c)) if pi.fits_corank(c) => (c + 1 - pi.len()) / 2,
                (None, Some(c)) => {
                    return Err(coxeter_core::Error::InvalidArgument(format!(
                        "cycle type {pi} does not occur with corank {c}"
                    ))
                    .into())
                }
                (None, None) => {
                    return Err(CliError::Usage("one of --d or --c is required".into()))
                }
            };
            let reps = realize::representative_quivers(&pi, d)?;
            emit(format, &reps, |r: &RepresentativeQuivers| {
                format!(
                    "linear: {}\nstar: {}",
                    quiver_line(&r.linear),
                    quiver_line(&r.star)
                )
            })
        }
        Verb::Verify {
            max_vertices,
            max_arrows,
            seed,
        } => {
            let config = SweepConfig {
                max_vertices,
                max_arrows,
                labeling: Labeling::FirstAppearance,
                seed,
                ..SweepConfig::default()
            };
            let report = run_sweep(&config);
            let out = emit(format, &report, ToString::to_string)?;
            if report.is_clean() {
                Ok(out)
            } else {
                Err(CliError::Contradiction(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Contradiction(out)) => {
            println!("{out}");
            eprintln!("error: identities failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
