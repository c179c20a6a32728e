//! Command-line surface. The binary is a thin wrapper around [`run`], which
//! is also exercised directly by the integration tests.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 scale-guard refusal. Failures print a machine-parsable line of the form
//! `ERROR <code>: <message>` to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::classifier::{self, SearchSpec};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::fileio;
use crate::lcd;
use crate::verify;

#[derive(Parser)]
#[command(
    name = "lcdcodes",
    version,
    about = "Binary LCD codes: analysis, classification, and bound tables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the metrics of every code in a code file
    Analyze {
        /// Code file path, or `-` for stdin
        codefile: String,
    },
    /// Classify inequivalent LCD codes with the given parameters
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dmin: usize,
        #[arg(long, default_value_t = 1)]
        dual_dmin: usize,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Output database path, or `-` for stdout
        #[arg(long, default_value = "-")]
        out: String,
        /// Omit timestamps for byte-identical reruns
        #[arg(long)]
        reproducible: bool,
        /// Lift the desk-scale guard
        #[arg(long)]
        force: bool,
    },
    /// Print the largest d for which an LCD [n, k, d] code exists
    Dlcd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Build and write a d_LCD bounds table
    Table {
        #[arg(long)]
        nmax: usize,
        /// Exact values, lines `n k value`
        #[arg(long)]
        seeds: Option<String>,
        /// External upper bounds d(n, k), lines `n k value`
        #[arg(long)]
        ceilings: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        reproducible: bool,
    },
    /// Apply a code construction to every code in a file
    Construct {
        #[arg(long, value_enum)]
        op: ConstructOp,
        /// Input code file, or `-` for stdin
        codefile: String,
        /// Coordinate for puncture/shorten
        #[arg(long)]
        coord: Option<usize>,
        /// Duplicated column for duplicate-column, as a {0,1} string of length k
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run randomized property suites; exits 0 iff all trials pass
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0xC0DE)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructOp {
    ExtendParity,
    DuplicateColumn,
    Puncture,
    Shorten,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Massey,
    Split,
    Punctured,
    Oddlike,
    Prop2,
    Extend,
    HullShorten,
    Bases,
}

impl Suite {
    fn names(self) -> Vec<&'static str> {
        match self {
            Suite::All => verify::SUITE_NAMES.to_vec(),
            Suite::Massey => vec!["massey"],
            Suite::Split => vec!["split"],
            Suite::Punctured => vec!["punctured"],
            Suite::Oddlike => vec!["oddlike"],
            Suite::Prop2 => vec!["prop2"],
            Suite::Extend => vec!["extend"],
            Suite::HullShorten => vec!["hull-shorten"],
            Suite::Bases => vec!["bases"],
        }
    }
}

/// Runs the CLI; returns the process exit code.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version by "erroring" with a display request
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::ScaleGuard(_) => 3,
                _ => 2,
            };
            eprintln!("ERROR {code}: {e}");
            code
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Analyze { codefile } => analyze(&codefile),
        Cmd::Classify {
            n,
            k,
            dmin,
            dual_dmin,
            threads,
            out,
            reproducible,
            force,
        } => run_classify(n, k, dmin, dual_dmin, threads, &out, reproducible, force),
        Cmd::Dlcd { n, k } => {
            println!("{}", classifier::d_lcd_exact(n, k)?);
            Ok(0)
        }
        Cmd::Table {
            nmax,
            seeds,
            ceilings,
            out,
            reproducible,
        } => run_table(nmax, seeds.as_deref(), ceilings.as_deref(), &out, reproducible),
        Cmd::Construct {
            op,
            codefile,
            coord,
            vector,
            out,
        } => construct(op, &codefile, coord, vector.as_deref(), &out),
        Cmd::Verify {
            suite,
            trials,
            seed,
        } => run_verify(suite, trials, seed),
    }
}

fn analyze(codefile: &str) -> Result<i32> {
    let codes = fileio::parse_code_file(&fileio::read_input(codefile)?);
    for code in codes? {
        let m = code.metrics()?;
        let weights = m
            .weight_enumerator
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",");
        println!(
            "n={} k={} d={} ddual={} hull={} lcd={} even_like={} has_all_ones={} weights=[{}]",
            code.n(),
            code.k(),
            m.d,
            m.d_dual,
            m.hull_dim,
            m.hull_dim == 0,
            m.is_even_like,
            m.has_all_ones,
            weights
        );
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_classify(
    n: usize,
    k: usize,
    dmin: usize,
    dual_dmin: usize,
    threads: Option<usize>,
    out: &str,
    reproducible: bool,
    force: bool,
) -> Result<i32> {
    let mut spec = SearchSpec::new(n, k, dmin, dual_dmin);
    spec.override_guard = force;
    let records = match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            pool.install(|| classifier::classify(&spec))?
        }
        None => classifier::classify(&spec)?,
    };
    fileio::write_output(out, &fileio::write_code_db(&records, reproducible))?;
    println!("count={}", records.len());
    Ok(0)
}

fn run_table(
    nmax: usize,
    seeds: Option<&str>,
    ceilings: Option<&str>,
    out: &str,
    reproducible: bool,
) -> Result<i32> {
    let read_triples = |path: Option<&str>| -> Result<Vec<(usize, usize, usize)>> {
        match path {
            Some(p) => fileio::parse_triples(&fileio::read_input(p)?),
            None => Ok(Vec::new()),
        }
    };
    let table = bounds::build_table(nmax, &read_triples(seeds)?, &read_triples(ceilings)?)?;
    let exact = table.cells.values().filter(|c| c.is_exact()).count();
    fileio::write_output(out, &fileio::write_bounds_tsv(&table, reproducible))?;
    println!("cells={} exact={}", table.cells.len(), exact);
    Ok(0)
}

fn construct(
    op: ConstructOp,
    codefile: &str,
    coord: Option<usize>,
    vector: Option<&str>,
    out: &str,
) -> Result<i32> {
    let codes = fileio::parse_code_file(&fileio::read_input(codefile)?)?;
    let mut output = String::new();
    for code in &codes {
        let derived: LinearCode = match op {
            ConstructOp::ExtendParity => lcd::extend_parity(code)?,
            ConstructOp::DuplicateColumn => {
                let v = vector.ok_or_else(|| {
                    Error::Precondition("duplicate-column needs --vector".into())
                })?;
                let bits: Vec<bool> = v
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Precondition(format!("bad vector symbol {c:?}"))),
                    })
                    .collect::<Result<_>>()?;
                lcd::duplicate_column(code, &bits)?
            }
            ConstructOp::Puncture => {
                let i = coord
                    .ok_or_else(|| Error::Precondition("puncture needs --coord".into()))?;
                code.puncture(i)?
            }
            ConstructOp::Shorten => {
                let i = coord
                    .ok_or_else(|| Error::Precondition("shorten needs --coord".into()))?;
                code.shorten(i)?
            }
        };
        output.push_str(&fileio::format_code(&derived));
        output.push_str("---\n");
    }
    fileio::write_output(out, &output)?;
    Ok(0)
}

fn run_verify(suite: Suite, trials: usize, seed: u64) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = false;
    for name in suite.names() {
        let report = verify::run_suite(name, &mut rng, trials).expect("known suite name");
        if report.passed() {
            println!("suite={name} trials={trials} result=pass");
        } else {
            failed = true;
            println!(
                "suite={name} trials={trials} result=fail failures={}",
                report.failures.len()
            );
            for f in report.failures.iter().take(5) {
                eprintln!("  {f}");
            }
        }
    }
    if failed {
        eprintln!("ERROR 1: one or more property suites failed");
        Ok(1)
    } else {
        Ok(0)
    }
}
