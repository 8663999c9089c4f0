use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wbsdp::apps::cloning::{symmetric_shrinking, CloningSdp};
use wbsdp::apps::eigmax::EigmaxModel;
use wbsdp::apps::majority::majority;
use wbsdp::apps::verify::full_suite;
use wbsdp::idempotents::{IdempotentSet, Symmetry};
use wbsdp::multiplicity::{full_brauer_csv, spsq_csv, total_degree_csv, Count};
use wbsdp::rational::{format_decimal, format_rational, parse_rational, to_f64};
use wbsdp::sdp2lp::lpfile::{write_lp, DEFAULT_DIGITS};
use wbsdp::sdp2lp::{convert, LpProblem, LpStatus, SdpSpec};
use wbsdp::{Error, Rational, Result};

const CACHE_ENV: &str = "WBSDP_CACHE_DIR";

#[derive(Parser)]
#[command(name = "wbsdp", version, about = "Walled Brauer idempotents and exact LP reductions of unitary-equivariant SDPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Gt,
    Dim,
    Full,
    Spsq,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Lp,
    Json,
    Sdpa,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load from the cache) an idempotent family and list its labels.
    Idempotents {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "gt")]
        symmetry: Symmetry,
        /// Write the coefficient file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a variable-count table as CSV.
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert an SDP spec to an LP.
    Convert {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "lp")]
        format: Format,
    },
    /// Convert an SDP spec and solve the LP exactly.
    Solve {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run the invariant suite for one shape.
    Verify {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Optimal worst-case fidelity of the three-input majority vote.
    Majority {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "lp")]
        format: Format,
    },
    /// Optimal probability of deciding whether the largest eigenvalue of a
    /// random qubit state lies below a threshold, as CSV.
    Eigmax {
        /// Number of copies.
        #[arg(long)]
        n: usize,
        /// Comma-separated thresholds in [1/2, 1].
        #[arg(long, default_value = "0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95,1")]
        grid: String,
    },
    /// Emit the asymmetric cloning SDP in SDPA sparse format.
    Cloning {
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long)]
        d: usize,
        /// Comma-separated marginal targets; defaults to the symmetric cloner.
        #[arg(long)]
        targets: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "sdpa")]
        format: Format,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn idempotents(p: usize, q: usize, d: usize, symmetry: Symmetry) -> Result<IdempotentSet> {
    IdempotentSet::load_or_build(cache_dir().as_deref(), p, q, d, symmetry)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render_lp(lp: &LpProblem, format: Format, comment: &str) -> Result<String> {
    match format {
        Format::Lp => Ok(write_lp(lp, DEFAULT_DIGITS, Some(comment))),
        Format::Json => lp.to_json(),
        Format::Sdpa => Err(Error::Invalid("SDPA output is only available for cloning".into())),
    }
}

fn write_with_sidecar(out: Option<&Path>, lp: &LpProblem, format: Format, comment: &str) -> Result<()> {
    emit(out, &render_lp(lp, format, comment)?)?;
    if let (Some(path), Format::Lp) = (out, format) {
        fs::write(path.with_extension("json"), lp.to_json()?)?;
    }
    Ok(())
}

fn load_spec(path: &Path) -> Result<SdpSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?;
    SdpSpec::from_json(&text)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Idempotents { p, q, d, symmetry, out } => {
            let set = idempotents(p, q, d, symmetry)?;
            println!("({p},{q},{d}) {symmetry}: {} idempotents", set.len());
            for (i, l) in set.labels.iter().enumerate() {
                println!("{:>4} {l} ({} terms)", i + 1, set.rows[i].len());
            }
            if let Some(path) = out {
                set.save(&path)?;
            }
        }
        Command::Tables { which, max_n, out } => {
            let csv = match which {
                Table::Gt => total_degree_csv(Count::GelfandTsetlin, max_n)?,
                Table::Dim => total_degree_csv(Count::Dimension, max_n)?,
                Table::Full => full_brauer_csv(max_n)?,
                Table::Spsq => spsq_csv(max_n)?,
            };
            emit(out.as_deref(), &csv)?;
        }
        Command::Convert { spec, out, format } => {
            let s = load_spec(&spec)?;
            let lp = convert(&s, &idempotents(s.p, s.q, s.d, s.symmetry)?)?;
            let comment = format!("converted from {}", spec.display());
            write_with_sidecar(out.as_deref(), &lp, format, &comment)?;
        }
        Command::Solve { spec } => {
            let s = load_spec(&spec)?;
            let lp = convert(&s, &idempotents(s.p, s.q, s.d, s.symmetry)?)?;
            let sol = lp.solve()?;
            println!("status: {:?}", sol.status);
            if sol.status == LpStatus::Optimal {
                println!("optimum: {} ({})", format_rational(&sol.objective), format_decimal(to_f64(&sol.objective), 12));
                for ((name, label), v) in lp.variables.iter().zip(&lp.labels).zip(&sol.x) {
                    println!("{name} = {} [{label}]", format_rational(v));
                }
            }
        }
        Command::Verify { p, q, d, seed } => {
            let report = full_suite(p, q, d, seed)?;
            println!("({p},{q},{d}) mode: {:?}", report.mode);
            for c in &report.checks {
                println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
            }
            if !report.passed() {
                return Err(Error::Verification(format!("invariant suite failed for ({p},{q},{d})")));
            }
        }
        Command::Majority { d, out, format } => {
            let set = idempotents(3, 1, d, Symmetry::SpSq)?;
            let r = majority(d, &set)?;
            println!("d = {d}: optimal fidelity {}", format_rational(&r.fidelity));
            println!("{} variables, {} constraints", r.lp.n_vars(), r.lp.constraint_count());
            if out.is_some() {
                write_with_sidecar(out.as_deref(), &r.lp, format, &format!("majority vote, d = {d}"))?;
            }
        }
        Command::Eigmax { n, grid } => {
            let grid = parse_list(&grid)?;
            let model = EigmaxModel::new(n)?;
            println!("c,probability,exact");
            for c in grid {
                let (v, _) = model.optimum(&c)?;
                println!("{},{},{}", format_rational(&c), format_decimal(to_f64(&v), 15), format_rational(&v));
            }
        }
        Command::Cloning { q, d, targets, out, format, seed } => {
            let sdp = CloningSdp::build(q, d, seed)?;
            let targets: Vec<f64> = match targets {
                Some(t) => parse_list(&t)?.iter().map(to_f64).collect(),
                None => vec![to_f64(&symmetric_shrinking(q, d)); q],
            };
            println!("(1,{q},{d}) block sizes: {:?}", sdp.block_sizes());
            println!("leaves: {}", sdp.leaves().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "));
            let diag: Vec<String> = sdp
                .trace_diagonal()
                .iter()
                .map(|b| b.iter().map(format_rational).collect::<Vec<_>>().join(","))
                .collect();
            println!("trace constraint diagonal coefficients: {}; rhs {}", diag.join("; "), format_rational(&sdp.trace_rhs));
            let sidecar = serde_json::to_string_pretty(&sdp.sidecar(&targets))?;
            match format {
                Format::Sdpa => {
                    emit(out.as_deref(), &sdp.to_sdpa(&targets, DEFAULT_DIGITS)?)?;
                    if let Some(path) = &out {
                        fs::write(path.with_extension("json"), sidecar)?;
                    }
                }
                Format::Json => emit(out.as_deref(), &sidecar)?,
                Format::Lp => return Err(Error::Invalid("cloning is an SDP; use --format sdpa or json".into())),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Verification(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
