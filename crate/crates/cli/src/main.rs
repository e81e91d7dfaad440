//! Command-line front end for `cantor-cdf`.

mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cantor_cdf::cdf::{eval, piecewise_points};
use cantor_cdf::interpolation::{interpolate, interpolate_at_scale, max_error};
use cantor_cdf::measure::{intersection_rate, normality, MuSampler};
use cantor_cdf::numbers::{alternate_expansion, to_expansion};
use cantor_cdf::reconstruction::{
    bruteforce_distinguishing_set, conditional_reconstruct, reconstruct_bounded_k,
    reconstruct_known_n, verify_uniqueness,
};
use cantor_cdf::verify::{run_suites, Suite};
use cantor_cdf::{measure, DigitVector, Error, Limits, Rational, Result};

#[derive(Parser)]
#[command(name = "cantor-cdf", version, about = "Exact CDFs of Cantor sets")]
struct Cli {
    /// Worker threads for the parallel reconstruction and sampling paths.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

fn parse_vector(s: &str) -> std::result::Result<DigitVector, String> {
    input::vector(s).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    input::rational(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct VectorOut {
    /// Print JSON instead of `N:bits`.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// F(x) for a rational x.
    Eval {
        #[arg(long, value_parser = parse_vector)]
        vector: DigitVector,
        #[arg(long, value_parser = parse_rational)]
        x: Rational,
        /// Truncated decimal output with this many digits.
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Eventually periodic base-N expansion of x; both expansions when x has two.
    Expand {
        #[arg(long, value_parser = parse_rational)]
        x: Rational,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        base: u32,
    },
    /// Kronecker product a ⊗ b.
    Kron {
        #[arg(long, value_parser = parse_vector)]
        a: DigitVector,
        #[arg(long, value_parser = parse_vector)]
        b: DigitVector,
        #[command(flatten)]
        out: VectorOut,
    },
    /// n-th Kronecker power.
    Power {
        #[arg(long, value_parser = parse_vector)]
        vector: DigitVector,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[command(flatten)]
        out: VectorOut,
    },
    /// Reversed vector, whose CDF is 1 - F(1 - x).
    Reverse {
        #[arg(long, value_parser = parse_vector)]
        vector: DigitVector,
        #[command(flatten)]
        out: VectorOut,
    },
    /// Canonical root: the smallest-scale vector with the same CDF.
    Canon {
        #[arg(long, value_parser = parse_vector)]
        vector: DigitVector,
        #[command(flatten)]
        out: VectorOut,
    },
    /// Whether two vectors define the same CDF.
    Equiv {
        #[arg(long, value_parser = parse_vector)]
        a: DigitVector,
        #[arg(long, value_parser = parse_vector)]
        b: DigitVector,
    },
    /// Staircase corners at level n as TSV `x<TAB>y`.
    Approx {
        #[arg(long, value_parser = parse_vector)]
        vector: DigitVector,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Digit vector interpolating a CSV dataset with header `x,y`.
    Interp {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the vector as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Interpolate at this scale instead of the minimal one.
        #[arg(long)]
        scale: Option<usize>,
    },
    /// Largest possible deviation between two CDFs through a dataset.
    Maxerr {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Recover a hidden vector from CDF samples.
    Reconstruct {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Known scale, for `known-n` and `conditional`.
        #[arg(long)]
        n: Option<usize>,
        /// Scale bound, for `bounded-k`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = cantor_cdf::cdf::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// `vector.json` or `table.csv` with header `x,y`.
        #[arg(long)]
        oracle: PathBuf,
        /// Write the recovered vector as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the query log as CSV `x,Fx` here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// A small set of grid points separating all CDFs of scale at most K.
    Uniqueness {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        k: u64,
    },
    /// Whether the given points separate all CDFs of scale at most K.
    VerifyUniqueness {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        k: u64,
        /// Comma-separated rationals.
        #[arg(long, conflicts_with = "input")]
        points: Option<String>,
        /// File with one rational per line.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Draws from the invariant measure as CSV `sample,digits`.
    MuSample {
        #[arg(long, value_parser = parse_vector)]
        vector: DigitVector,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 32)]
        depth: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Base-M digit frequencies of μ-random points as CSV.
    Normality {
        #[arg(long, value_parser = parse_vector, default_value = "3:101")]
        vector: DigitVector,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        base: u32,
        /// Base-M digits per sample.
        #[arg(long)]
        digits: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Fraction of μ_a-random points not excluded from the Cantor set of b.
    Intersect {
        #[arg(long, value_parser = parse_vector)]
        a: DigitVector,
        #[arg(long, value_parser = parse_vector)]
        b: DigitVector,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 100)]
        depth: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Median |Σ e(h M^n x)| / L over μ-random x, for L doubling up to lmax.
    Weyl {
        #[arg(long, value_parser = parse_vector, default_value = "3:101")]
        vector: DigitVector,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        m: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        h: u64,
        #[arg(long, default_value_t = 64)]
        lmin: usize,
        #[arg(long)]
        lmax: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Run property suites and print a pass/fail table.
    Verify {
        /// algebra, cdf, interpolation, reconstruction, measure or all.
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    KnownN,
    Conditional,
    BoundedK,
}

/// What a successful command asks the process to exit with.
enum Outcome {
    Done,
    ChecksFailed,
}

fn print_vector(out: &mut dyn Write, v: &DigitVector, opts: &VectorOut) -> io::Result<()> {
    if opts.json {
        writeln!(out, "{}", v.to_json())
    } else {
        writeln!(out, "{v}")
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Parse(format!("writing output: {e}"))
}

fn require<T>(value: Option<T>, flag: &str, mode: &str) -> Result<T> {
    value.ok_or_else(|| Error::Parse(format!("--{flag} is required for {mode}")))
}

fn run(command: Command, out: &mut dyn Write) -> Result<Outcome> {
    let limits = Limits::from_env()?;
    match command {
        Command::Eval { vector, x, digits } => {
            writeln!(out, "{}", input::show(&eval(&vector, &x), digits)).map_err(io_err)?;
        }
        Command::Expand { x, base } => {
            writeln!(out, "{}", to_expansion(&x, base)?).map_err(io_err)?;
            if let Some(alt) = alternate_expansion(&x, base) {
                writeln!(out, "{alt}").map_err(io_err)?;
            }
        }
        Command::Kron { a, b, out: opts } => {
            let ab = a.kronecker(&b);
            if ab.bits().len() > limits.max_bits {
                return Err(Error::ResourceLimit {
                    what: "Kronecker product",
                    needed: ab.bits().len() as u128,
                    cap: limits.max_bits,
                });
            }
            print_vector(out, &ab, &opts).map_err(io_err)?;
        }
        Command::Power {
            vector,
            n,
            out: opts,
        } => {
            print_vector(out, &vector.power_with(n, &limits)?, &opts).map_err(io_err)?;
        }
        Command::Reverse { vector, out: opts } => {
            print_vector(out, &vector.reverse(), &opts).map_err(io_err)?;
        }
        Command::Canon { vector, out: opts } => {
            print_vector(out, &vector.canonical_root(), &opts).map_err(io_err)?;
        }
        Command::Equiv { a, b } => match a.equivalence(&b, &limits)? {
            Some(w) => {
                let verdict = if w.is_equivalent() {
                    "equivalent"
                } else {
                    "not equivalent"
                };
                writeln!(out, "{verdict}").map_err(io_err)?;
                writeln!(
                    out,
                    "common base {}: powers {} and {}",
                    w.common_base, w.left_power, w.right_power
                )
                .map_err(io_err)?;
            }
            None => {
                writeln!(out, "not equivalent").map_err(io_err)?;
                writeln!(out, "scales {} and {} are independent", a.base(), b.base())
                    .map_err(io_err)?;
            }
        },
        Command::Approx {
            vector,
            level,
            digits,
        } => {
            for (x, y) in piecewise_points(&vector, level, &limits)? {
                writeln!(
                    out,
                    "{}\t{}",
                    input::show(&x, digits),
                    input::show(&y, digits)
                )
                .map_err(io_err)?;
            }
        }
        Command::Interp {
            input: path,
            out: dest,
            scale,
        } => {
            let data = input::pairs(&path, ["x", "y"])?;
            let v = match scale {
                Some(n) => interpolate_at_scale(&data, n)?,
                None => interpolate(&data)?,
            };
            if let Some(dest) = dest {
                input::write_file(&dest, &format!("{}\n", v.to_json()))?;
            }
            writeln!(out, "{v}").map_err(io_err)?;
        }
        Command::Maxerr {
            input: path,
            digits,
        } => {
            let data = input::pairs(&path, ["x", "y"])?;
            writeln!(out, "{}", input::show(&max_error(&data)?, digits)).map_err(io_err)?;
        }
        Command::Reconstruct {
            mode,
            n,
            k,
            depth,
            seed,
            oracle,
            out: dest,
            log,
        } => {
            let mut oracle = input::oracle(&oracle)?;
            let result = match mode {
                Mode::KnownN => reconstruct_known_n(&mut oracle, require(n, "n", "known-n")?),
                Mode::Conditional => {
                    conditional_reconstruct(&mut oracle, require(n, "n", "conditional")?)
                }
                Mode::BoundedK => {
                    let k = require(k, "k", "bounded-k")?;
                    let seed = require(seed, "seed", "bounded-k")?;
                    reconstruct_bounded_k(&mut oracle, k, depth, seed)
                }
            };
            // the log is written even when the procedure fails
            if let Some(log) = log {
                let mut buf = Vec::new();
                input::write_csv(&mut buf, &["x", "Fx"], &input::log_rows(oracle.log()))?;
                input::write_file(&log, &String::from_utf8_lossy(&buf))?;
            }
            let v = result?;
            if let Some(dest) = dest {
                input::write_file(&dest, &format!("{}\n", v.to_json()))?;
            }
            writeln!(out, "{v}").map_err(io_err)?;
            writeln!(out, "queries: {}", oracle.queries()).map_err(io_err)?;
        }
        Command::Uniqueness { k } => {
            let points = bruteforce_distinguishing_set(k as usize, &limits)?;
            writeln!(out, "x").map_err(io_err)?;
            for x in points {
                writeln!(out, "{x}").map_err(io_err)?;
            }
        }
        Command::VerifyUniqueness {
            k,
            points,
            input: path,
        } => {
            let text = match (points, path) {
                (Some(p), _) => p,
                (None, Some(path)) => input::read_file(&path)?,
                (None, None) => return Err(Error::Parse("give --points or --in".into())),
            };
            let points = input::point_list(&text)?;
            let ok = verify_uniqueness(k as usize, &points, &limits)?;
            writeln!(out, "{}", if ok { "separating" } else { "not separating" })
                .map_err(io_err)?;
        }
        Command::MuSample {
            vector,
            count,
            depth,
            seed,
        } => {
            let sep = if vector.base() <= 10 { "" } else { "." };
            let rows: Vec<[String; 2]> = MuSampler::new(vector, seed)
                .sample(count, depth)
                .iter_mut()
                .enumerate()
                .map(|(i, s)| {
                    let digits: Vec<String> = s.prefix(depth).iter().map(u32::to_string).collect();
                    [i.to_string(), digits.join(sep)]
                })
                .collect();
            input::write_csv(out, &["sample", "digits"], &rows)?;
        }
        Command::Normality {
            vector,
            base,
            digits,
            samples,
            seed,
        } => {
            if samples == 0 || digits == 0 {
                return Err(Error::InvalidData(
                    "--samples and --digits must be positive".into(),
                ));
            }
            let report = normality(&vector, base, digits, samples, seed)?;
            let rows: Vec<[String; 3]> = (0..base)
                .map(|d| {
                    [
                        d.to_string(),
                        report.counts[d as usize].to_string(),
                        format!("{:.6}", report.frequency(d)),
                    ]
                })
                .collect();
            input::write_csv(out, &["digit", "count", "frequency"], &rows)?;
        }
        Command::Intersect {
            a,
            b,
            count,
            depth,
            seed,
        } => {
            let rate = intersection_rate(&a, &b, count, depth, seed)?;
            let row = [count.to_string(), depth.to_string(), format!("{rate:.6}")];
            input::write_csv(out, &["count", "depth", "rate"], &[row])?;
        }
        Command::Weyl {
            vector,
            m,
            h,
            lmin,
            lmax,
            samples,
            seed,
        } => {
            if lmin == 0 || lmax < lmin {
                return Err(Error::InvalidData(format!(
                    "need 0 < lmin <= lmax, got {lmin}, {lmax}"
                )));
            }
            let mut rows = Vec::new();
            let mut l = lmin;
            while l <= lmax {
                let ratio = measure::weyl_median_ratio(&vector, m, h, l, samples, seed)?;
                rows.push([l.to_string(), format!("{ratio:.6}")]);
                l *= 2;
            }
            input::write_csv(out, &["L", "median_ratio"], &rows)?;
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let checks = run_suites(&suites);
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{mark}  {:<14} {:<width$}  {}",
                    c.suite, c.name, c.detail
                )
                .map_err(io_err)?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {failed} failed", checks.len()).map_err(io_err)?;
            if failed > 0 {
                return Ok(Outcome::ChecksFailed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    ExitCode::from(1)
                }
                _ => {
                    let text = e.to_string();
                    eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
                    ExitCode::from(1)
                }
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(2),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(if e.is_procedure_failure() { 2 } else { 1 })
        }
    }
}
