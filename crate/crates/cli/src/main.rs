use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use voakit::verify::{evaluate, run_suite, table, SuiteConfig, TableKind, Verdict, SUITES};
use voakit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "voakit",
    version,
    about = "Exact checks for Zhu-type algebras, bimodules and dual vacuum spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites and print one verdict per check.
    ///
    /// Exit codes: 0 all passed, 1 some check failed, 2 some check was
    /// inconclusive at the cutoff, 3 usage error.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Suite name, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List the registered suites and exit.
        #[arg(long)]
        list: bool,
        /// Flip one expected value in the first check (exercises the failure path).
        #[arg(long, hide = true)]
        inject_fail: bool,
    },
    /// Print a dimension or rank table.
    ///
    /// CSV columns: omega-dims: n,cutoff,bound,dim.
    /// an-upper-bounds: n,cutoff,margin,span_rank,quotient_dim_bound (cutoff swept from 1 to D).
    /// odagger-ranks, odiamond-ranks: m,n,cutoff,margin,span_rank,quotient_dim_bound,dual_dim.
    Table {
        #[command(flatten)]
        params: Params,
        /// omega-dims, an-upper-bounds, odagger-ranks or odiamond-ranks.
        #[arg(long)]
        kind: String,
        /// Print CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
        /// Also write the CSV to this file.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Evaluate one expression, e.g. "star 0 h h" or "theta (mode -2 h h)".
    ///
    /// Operations: star n a b, circ n a b, circmn m n a b, barstar m n a b,
    /// barstarup m n a b, bracket p m n a b, dot a b, gap a b, mode k a b,
    /// theta a, L k a, shift s a. Vectors: one, h, w, p[2,1], (expr).
    Compute {
        expr: String,
        #[arg(long)]
        voa: Option<String>,
        #[arg(long)]
        c: Option<String>,
        /// Largest weight kept in the basis.
        #[arg(long, default_value_t = 16)]
        max_weight: u32,
    },
}

#[derive(Args)]
struct Params {
    /// Flat `key = value` file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// heisenberg or virasoro.
    #[arg(long)]
    voa: Option<String>,
    /// Central charge p/q (Virasoro only).
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    cutoff: Option<String>,
    #[arg(long)]
    margin: Option<String>,
    /// Range a..b.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    /// Range a..b.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// Range a..b of shifts.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Weight bound of the test corpus.
    #[arg(long)]
    corpus: Option<String>,
}

impl Params {
    fn config(&self) -> Result<SuiteConfig> {
        let mut c = SuiteConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            c.apply_text(&text)?;
        }
        let overrides = [
            ("voa", &self.voa),
            ("c", &self.c),
            ("cutoff", &self.cutoff),
            ("margin", &self.margin),
            ("m", &self.m),
            ("n", &self.n),
            ("p", &self.p),
            ("corpus", &self.corpus),
        ];
        for (k, v) in overrides {
            if let Some(v) = v {
                c.set(k, v)?;
            }
        }
        Ok(c)
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("VOAKIT_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Usage(format!("VOAKIT_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    init_threads()?;
    match cli.command {
        Command::Verify {
            params,
            suite,
            report,
            list,
            inject_fail,
        } => {
            if list {
                for s in SUITES {
                    println!("{:<18} {}", s.name, s.about);
                }
                return Ok(0);
            }
            let mut config = params.config()?;
            if let Some(s) = suite {
                config.set("suite", &s)?;
            }
            if let Some(r) = report {
                config.report = Some(r);
            }
            config.inject_fail |= inject_fail;
            let report = run_suite(&config)?;
            for r in &report.records {
                println!(
                    "{:<22} {} ({} checks, {} ms)",
                    r.verdict.as_str(),
                    r.id,
                    r.checked,
                    r.millis
                );
                if r.verdict != Verdict::Pass {
                    if let Some(w) = &r.witness {
                        println!("    inputs: {}\n    lhs:    {}\n    rhs:    {}", w.inputs, w.lhs, w.rhs);
                    }
                }
            }
            let s = &report.summary;
            println!(
                "total {} pass {} fail {} inconclusive {}",
                s.total, s.pass, s.fail, s.inconclusive
            );
            if let Some(path) = &config.report {
                report.emit(path)?;
            }
            Ok(report.exit_code() as u8)
        }
        Command::Table {
            params,
            kind,
            csv,
            csv_out,
        } => {
            let kind: TableKind = kind.parse()?;
            let t = table(kind, &params.config()?)?;
            print!("{}", if csv { t.to_csv() } else { t.to_text() });
            if let Some(path) = csv_out {
                std::fs::write(&path, t.to_csv()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(0)
        }
        Command::Compute {
            expr,
            voa,
            c,
            max_weight,
        } => {
            let mut config = SuiteConfig::default();
            if let Some(v) = voa {
                config.set("voa", &v)?;
            }
            if let Some(c) = c {
                config.set("c", &c)?;
            }
            config.validate()?;
            let voa = config.instance(max_weight)?;
            let v = evaluate(&voa, &expr)?;
            println!("{}", voa.format_vector(&v));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("voakit: {e}");
            ExitCode::from(if matches!(e, Error::Usage(_)) { 3 } else { 1 })
        }
    }
}
