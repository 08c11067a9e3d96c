//! `curvecount`: command-line front end to the curvecount library.
//!
//! Exit status: 0 on success, 1 on a domain error (bad input data, window
//! too narrow, integrality violation, failed check), 2 on a usage error.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use curvecount::acceptance::{run_all, run_criterion, CRITERIA, DEFAULT_SEED};
use curvecount::datasets::{load_example, local_elliptic, ELLIPTIC_DEFAULT_CLASSES};
use curvecount::invariants::{
    dt_full, gv_to_dt_reduced, gv_to_gw, gw_to_gv, solve_gv_from_dt, z0_partition_function,
};
use curvecount::kkv::{euler_hilb_points, kkv_dt_contribution, kkv_invariant};
use curvecount::partitions::{mcmahon_series, QSign};
use curvecount::series::format_rational;
use curvecount::{DtSeries, Error, GvTable, GwTable, KkvInput, QWindow, ThreefoldData};

#[derive(Parser)]
#[command(
    name = "curvecount",
    version,
    about = "Exact GV / GW / DT curve-counting conversions"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct WindowArgs {
    /// Lowest power of q that must be representable.
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    qmin: i64,
    /// Highest power of q kept.
    #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
    qmax: i64,
    /// Highest curve degree kept.
    #[arg(long, default_value_t = 6)]
    tmax: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of M(q) (or M(-q)) through q^order.
    Mcmahon {
        #[arg(long)]
        order: u32,
        /// Expand M(-q) instead of M(q).
        #[arg(long)]
        negative: bool,
    },
    /// Coefficients of the degree-zero series M(-q)^e through q^order.
    Z0 {
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
        /// Defaults to the Euler characteristic.
        #[arg(long, allow_hyphen_values = true)]
        chern_degree: Option<i64>,
        #[arg(long)]
        order: u32,
    },
    /// GV table to reduced DT series (full series with --euler).
    Gv2dt {
        /// GV table file; stdin when absent or `-`.
        input: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArgs,
        /// Multiply by M(-q)^euler, expanded through q^qmax.
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<i64>,
    },
    /// Reduced DT series to GV table.
    Dt2gv {
        input: Option<PathBuf>,
        /// Print rational solutions instead of failing on non-integral values.
        #[arg(long)]
        allow_rational: bool,
    },
    /// GV table to GW invariants through genus `genus-order`.
    Gv2gw {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        genus_order: u32,
        #[arg(long, default_value_t = 6)]
        tmax: u32,
    },
    /// GW invariants to GV table through genus `gmax`.
    Gw2gv {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        gmax: u32,
    },
    /// BPS invariant from Euler characteristics of relative Hilbert schemes.
    Kkv {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, allow_hyphen_values = true)]
        dim_m: i64,
        /// e(C^[0]),...,e(C^[delta]).
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        eulers: Vec<i64>,
        /// dim C^[0],...,dim C^[delta]; defaults to dim M + n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        dims: Option<Vec<i64>>,
        /// Also print the coefficient of t^beta in the reduced DT series (delta <= 1).
        #[arg(long)]
        dt: bool,
    },
    /// Euler characteristic of the Hilbert scheme of n points on a threefold.
    HilbEuler {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
    },
    /// Run the acceptance criteria.
    Check {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print a bundled GV table.
    Example {
        name: String,
        /// Number of classes for `local_elliptic`.
        #[arg(long)]
        classes: Option<u32>,
    },
}

enum Failure {
    Usage(ErrorKind, String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn coefficient_line(values: &[curvecount::Rational]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    parts.join(" ")
}

fn window(args: &WindowArgs) -> Result<QWindow, Failure> {
    if args.qmin > args.qmax {
        return Err(Failure::Usage(
            ErrorKind::ValueValidation,
            format!("--qmin {} exceeds --qmax {}", args.qmin, args.qmax),
        ));
    }
    Ok(QWindow::new(args.qmin, args.qmax))
}

/// Runs a command and returns the text for stdout and whether it succeeded.
fn run(command: &Command) -> Result<(String, bool), Failure> {
    let mut out = String::new();
    let mut ok = true;
    match command {
        Command::Mcmahon { order, negative } => {
            let sign = if *negative { QSign::Minus } else { QSign::Plus };
            let m = mcmahon_series(*order, sign);
            writeln!(out, "{}", coefficient_line(&m.dense(*order as i64))).unwrap();
        }
        Command::Z0 {
            euler,
            chern_degree,
            order,
        } => {
            let x = ThreefoldData {
                euler: *euler,
                chern_degree: chern_degree.unwrap_or(*euler),
            };
            let z = z0_partition_function(&x, *order);
            writeln!(out, "{}", coefficient_line(&z.dense(*order as i64))).unwrap();
        }
        Command::Gv2dt {
            input,
            window: w,
            euler,
        } => {
            let gv = GvTable::from_text(&read_input(input)?)?;
            let win = window(w)?;
            let mut z = gv_to_dt_reduced(&gv, win, w.tmax)?;
            if let Some(e) = euler {
                let order = win.qmax.max(0) as u32;
                z = dt_full(&z, &ThreefoldData::calabi_yau(*e), order)?;
            }
            write!(out, "{z}").unwrap();
        }
        Command::Dt2gv {
            input,
            allow_rational,
        } => {
            let z = DtSeries::from_text(&read_input(input)?)?;
            let solution = solve_gv_from_dt(&z)?;
            if *allow_rational {
                write!(out, "{solution}").unwrap();
            } else {
                write!(out, "{}", solution.into_table()?).unwrap();
            }
        }
        Command::Gv2gw {
            input,
            genus_order,
            tmax,
        } => {
            let gv = GvTable::from_text(&read_input(input)?)?;
            write!(out, "{}", gv_to_gw(&gv, *genus_order, *tmax)).unwrap();
        }
        Command::Gw2gv { input, gmax } => {
            let gw = GwTable::from_text(&read_input(input)?)?;
            let solution = gw_to_gv(&gw, *gmax)?;
            for (beta, g, v) in solution.integrality_report() {
                eprintln!(
                    "note: n^{g}_{beta} = {} is not an integer",
                    format_rational(&v)
                );
            }
            write!(out, "{solution}").unwrap();
        }
        Command::Kkv {
            genus,
            delta,
            dim_m,
            eulers,
            dims,
            dt,
        } => {
            let input = KkvInput {
                g: *genus,
                delta: *delta,
                dim_m: *dim_m,
                eulers: eulers.clone(),
                dims: dims.clone(),
            };
            writeln!(out, "{}", kkv_invariant(&input)?).unwrap();
            if *dt {
                write!(out, "{}", kkv_dt_contribution(&input)?).unwrap();
            }
        }
        Command::HilbEuler { n, euler } => {
            writeln!(out, "{}", euler_hilb_points(*n, *euler)?).unwrap();
        }
        Command::Check { criterion, seed } => {
            let reports = match criterion {
                Some(id) => vec![run_criterion(*id, *seed).ok_or_else(|| {
                    Failure::Usage(
                        ErrorKind::InvalidValue,
                        format!("unknown criterion {id}; expected 1..={}", CRITERIA.len()),
                    )
                })?],
                None => run_all(*seed),
            };
            for r in &reports {
                writeln!(out, "{r}").unwrap();
            }
            ok = reports.iter().all(|r| r.passed);
        }
        Command::Example { name, classes } => {
            let model = match (name.as_str(), classes) {
                ("local_elliptic", Some(k)) => local_elliptic(*k),
                ("local_elliptic", None) => local_elliptic(ELLIPTIC_DEFAULT_CLASSES),
                (_, Some(_)) => {
                    return Err(Failure::Usage(
                        ErrorKind::ArgumentConflict,
                        "--classes only applies to local_elliptic".into(),
                    ))
                }
                (other, None) => load_example(other)?,
            };
            write!(out, "{}", model.table).unwrap();
        }
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((text, ok)) => {
            let written = match &cli.output {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(kind, msg)) => Cli::command().error(kind, msg).exit(),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
