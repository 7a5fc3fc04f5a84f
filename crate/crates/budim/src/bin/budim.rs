//! Command-line front-end: expansions, admissibility, intervals,
//! entropy, the dimension function, and curve sampling as CSV/JSON.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use budim::admissible::{
    admissibility_witness, critical_bases, enumerate_admissible, interval_endpoints,
};
use budim::dimension::{dim_unique_set, sample_curve, DimensionSample, Regime};
use budim::entropy::{build_sft, entropy};
use budim::expansions::{greedy_of_x, quasi_greedy_of_x, Base, TiePolicy};
use budim::words::{Alphabet, Word};
use budim::Error;

#[derive(Parser)]
#[command(name = "budim", version, about = "unique beta-expansion toolkit")]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Greedy,
    Quasi,
}

#[derive(Subcommand)]
enum Command {
    /// Digit prefix of the greedy or quasi-greedy expansion of x.
    Expand {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Mode::Quasi)]
        mode: Mode,
        #[arg(long, default_value_t = 256)]
        depth: usize,
        /// Fail (instead of snapping) when beta r falls inside the
        /// floating-point guard band around a digit boundary.
        #[arg(long)]
        strict: bool,
    },
    /// Admissibility of a block, with a witness when it fails.
    Admissible {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        block: String,
    },
    /// Certified interval [beta_L, beta_U] generated by a block.
    Interval {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        block: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Spectral radius and entropy of the subshift of a block.
    Entropy {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        block: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Dimension of the unique-expansion set at one base.
    Dim {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long = "p-max", default_value_t = 6)]
        p_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Uniform grid of dimension samples over [lo, hi].
    Curve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        points: usize,
        #[arg(long = "p-max", default_value_t = 6)]
        p_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// All admissible blocks up to a length.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long = "p-max")]
        p_max: usize,
    },
    /// Generalized golden ratio G_N and critical base beta_c(N).
    Critical {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

/// 15 significant digits.
fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded(_) | Error::Undecided | Error::DepthExceeded(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: &Cli) -> budim::Result<()> {
    match &cli.command {
        Command::Expand { n, beta, x, mode, depth, strict } => {
            let alphabet = Alphabet::new(*n)?;
            let policy = if *strict { TiePolicy::Strict } else { TiePolicy::Snap };
            let base = Base::new(alphabet, *beta)?.with_tie_policy(policy);
            let w = match mode {
                Mode::Greedy => greedy_of_x(*x, &base, *depth)?,
                Mode::Quasi => quasi_greedy_of_x(*x, &base, *depth)?,
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&w).expect("serialize")),
                _ => println!("{w}"),
            }
            Ok(())
        }
        Command::Admissible { n, block } => {
            let w = Word::parse(Alphabet::new(*n)?, block)?;
            let witness = admissibility_witness(&w);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "block": w,
                        "admissible": witness.is_none(),
                        "witness": witness,
                    })
                ),
                _ => match witness {
                    None => println!("true"),
                    Some(why) => println!("false, witness \"{why}\""),
                },
            }
            Ok(())
        }
        Command::Interval { n, block, tol } => {
            let w = Word::parse(Alphabet::new(*n)?, block)?;
            let iv = interval_endpoints(&w, *tol)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&iv).expect("serialize")),
                _ => {
                    println!("block = {}", w.to_hyphen_string());
                    println!(
                        "beta_L = {} +/- {:.2e}",
                        sig15(iv.beta_l.value),
                        iv.beta_l.radius
                    );
                    println!(
                        "beta_U = {} +/- {:.2e}",
                        sig15(iv.beta_u.value),
                        iv.beta_u.radius
                    );
                }
            }
            Ok(())
        }
        Command::Entropy { n, block, tol } => {
            let w = Word::parse(Alphabet::new(*n)?, block)?;
            let e = entropy(&w, *tol)?;
            match cli.format {
                Format::Json => {
                    let g = build_sft(&w)?;
                    println!(
                        "{}",
                        serde_json::json!({ "graph": g, "entropy": e })
                    );
                }
                _ => {
                    println!("rho = {} +/- {:.2e}", sig15(e.rho), e.rho_radius);
                    println!("h = {}{}", sig15(e.h), if e.certified_zero { " (exact)" } else { "" });
                }
            }
            Ok(())
        }
        Command::Dim { n, beta, p_max, tol } => {
            let base = Base::new(Alphabet::new(*n)?, *beta)?;
            let s = dim_unique_set(&base, *p_max, *tol)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&s).expect("serialize")),
                Format::Csv => {
                    println!("beta,dim,regime,block,h");
                    println!("{}", csv_row(&s));
                }
                Format::Text => {
                    println!("beta = {}", sig15(s.beta));
                    println!("regime = {}", s.regime.label());
                    match s.dim() {
                        Some(d) => println!("dim = {}", sig15(d)),
                        None => println!("dim in [{}, {}]", sig15(s.dim_lo), sig15(s.dim_hi)),
                    }
                    if let Regime::AdmissibleInterval(b) = &s.regime {
                        println!("block = {}", b.to_hyphen_string());
                    }
                    if let Some(h) = s.h {
                        println!("h = {}", sig15(h));
                    }
                }
            }
            Ok(())
        }
        Command::Curve { n, lo, hi, points, p_max, tol, out } => {
            let curve = sample_curve(Alphabet::new(*n)?, *lo, *hi, *points, *p_max, *tol)?;
            let body = match cli.format {
                Format::Json => serde_json::to_string(&curve).expect("serialize"),
                _ => {
                    let mut body = String::from("beta,dim,regime,block,h\n");
                    for s in &curve.samples {
                        body.push_str(&csv_row(s));
                        body.push('\n');
                    }
                    body
                }
            };
            match out {
                Some(path) => {
                    let mut f = std::fs::File::create(path).map_err(|e| {
                        Error::BaseOutOfRange(format!("cannot write {}: {e}", path.display()))
                    })?;
                    f.write_all(body.as_bytes())
                        .and_then(|_| f.flush())
                        .map_err(|e| Error::BaseOutOfRange(format!("write failed: {e}")))?;
                    eprintln!(
                        "{} samples, {:.1}% unresolved",
                        curve.samples.len(),
                        100.0 * curve.unresolved_fraction
                    );
                }
                None => print!("{body}"),
            }
            Ok(())
        }
        Command::Enumerate { n, p_max } => {
            let blocks = enumerate_admissible(Alphabet::new(*n)?, *p_max)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&blocks).expect("serialize")),
                _ => {
                    for b in &blocks {
                        println!("{}", b.to_hyphen_string());
                    }
                }
            }
            Ok(())
        }
        Command::Critical { n, tol } => {
            let (g, bc) = critical_bases(Alphabet::new(*n)?, *tol)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "G": g, "beta_c": bc })
                ),
                _ => {
                    println!("G = {} +/- {:.2e}", sig15(g.value), g.radius);
                    println!("beta_c = {} +/- {:.2e}", sig15(bc.value), bc.radius);
                }
            }
            Ok(())
        }
    }
}

fn csv_row(s: &DimensionSample) -> String {
    let (dim, h) = match (s.dim(), s.h) {
        (Some(d), Some(h)) => (sig15(d), sig15(h)),
        _ => (String::new(), String::new()),
    };
    let block = match &s.regime {
        Regime::AdmissibleInterval(b) => b.to_hyphen_string(),
        _ => String::new(),
    };
    format!("{},{},{},{},{}", sig15(s.beta), dim, s.regime.label(), block, h)
}
