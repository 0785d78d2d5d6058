mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::Failure;
use output::Format;

#[derive(Parser)]
#[command(name = "wallsun", version, about = "Lucas-sequence periods, generalized Wall-Sun-Sun primes and trinomial monogenicity")]
struct Cli {
    /// Output format [default: plain]
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// TOML file of `key = value` defaults mirroring the long flags; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for prime scans [default: $WALLSUN_JOBS or available parallelism]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report wall-clock time (JSON timing_ms is 0 otherwise)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wall-Sun-Sun prime queries
    Wss {
        #[command(subcommand)]
        command: WssCommand,
    },
    /// Recompute the reference table of Wall-Sun-Sun primes below 100
    #[command(name = "table1")]
    ReferenceTable,
    /// Period of U_n modulo m
    Period {
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Monogenicity of trinomials
    Mono {
        #[command(subcommand)]
        command: MonoCommand,
    },
    /// Compare predicted and computed monogenicity of f(x^(s^n)) for n = 1..=n-max
    CrossValidate {
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        /// Skip the Dedekind cross-check of each closed-form verdict
        #[arg(long)]
        no_dedekind: bool,
    },
}

#[derive(Subcommand)]
enum WssCommand {
    /// All (a,b)-Wall-Sun-Sun primes p <= pmax
    Search {
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        pmax: Option<u64>,
    },
}

#[derive(Subcommand)]
#[allow(non_snake_case)]
enum MonoCommand {
    /// Monogenicity of x^(2 s^n) - a x^(s^n) - b
    Check {
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        /// Skip the Dedekind cross-check of each closed-form verdict
        #[arg(long)]
        no_dedekind: bool,
    },
    /// Monogenicity of x^N + A x^M + B
    Trinomial {
        #[arg(long = "N")]
        N: Option<u64>,
        #[arg(long = "M")]
        M: Option<u64>,
        #[arg(long = "A", allow_negative_numbers = true)]
        A: Option<i64>,
        #[arg(long = "B", allow_negative_numbers = true)]
        B: Option<i64>,
    },
}

/// Flag defaults read from `--config`.
struct Config(toml::Table);

impl Config {
    fn load(path: Option<&PathBuf>) -> Result<Self, Failure> {
        let Some(path) = path else { return Ok(Config(toml::Table::new())) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        let table = text
            .parse::<toml::Table>()
            .map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))?;
        Ok(Config(table))
    }

    fn lookup(&self, key: &str) -> Option<&toml::Value> {
        self.0.get(key).or_else(|| self.0.get(&key.replace('_', "-")))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        let Some(v) = self.lookup(key) else { return Ok(None) };
        let text = match v {
            toml::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        text.parse()
            .map(Some)
            .map_err(|_| Failure::usage(format!("config key `{key}` has an invalid value {v}")))
    }

    /// Flag value if given, else the config value, else a usage error.
    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, Failure> {
        match flag {
            Some(v) => Ok(v),
            None => self.get(key)?.ok_or_else(|| Failure::usage(format!("missing required value --{key}"))),
        }
    }
}

fn default_jobs() -> usize {
    std::env::var("WALLSUN_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config::load(cli.config.as_ref())?;
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.lookup("format") {
            Some(toml::Value::String(s)) => {
                <Format as clap::ValueEnum>::from_str(s, true).map_err(|_| Failure::usage(format!("unknown format {s}")))?
            }
            Some(v) => return Err(Failure::usage(format!("config key `format` has an invalid value {v}"))),
            None => Format::Plain,
        },
    };
    let jobs = match cli.jobs {
        Some(j) => j,
        None => cfg.get("jobs")?.unwrap_or_else(default_jobs),
    }
    .max(1);
    let timing = cli.timing || cfg.get::<bool>("timing")?.unwrap_or(false);

    let start = Instant::now();
    let emission = match cli.command {
        Command::Wss { command: WssCommand::Search { a, b, pmax } } => commands::wss_search(
            cfg.require(a, "a")?,
            cfg.require(b, "b")?,
            cfg.require(pmax, "pmax")?,
            jobs,
        ),
        Command::ReferenceTable => commands::reference_table(jobs),
        Command::Period { a, b, m } => {
            commands::period_cmd(cfg.require(a, "a")?, cfg.require(b, "b")?, cfg.require(m, "m")?)
        }
        Command::Mono { command: MonoCommand::Check { a, b, s, n, no_dedekind } } => commands::mono_check(
            cfg.require(a, "a")?,
            cfg.require(b, "b")?,
            cfg.require(s, "s")?,
            cfg.require(n, "n")?,
            !(no_dedekind || cfg.get("no_dedekind")?.unwrap_or(false)),
        ),
        Command::Mono { command: MonoCommand::Trinomial { N, M, A, B } } => commands::mono_trinomial(
            cfg.require(N, "N")?,
            cfg.require(M, "M")?,
            cfg.require(A, "A")?,
            cfg.require(B, "B")?,
        ),
        Command::CrossValidate { a, b, s, n_max, no_dedekind } => commands::cross_validate_cmd(
            cfg.require(a, "a")?,
            cfg.require(b, "b")?,
            cfg.require(s, "s")?,
            cfg.require(n_max, "n_max")?,
            !(no_dedekind || cfg.get("no_dedekind")?.unwrap_or(false)),
        ),
    }?;
    let timing_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);

    let stdout = io::stdout();
    let mut out = stdout.lock();
    output::render(&mut out, &emission, format, timing_ms)
        .and_then(|_| out.flush())
        .map_err(|e| Failure { code: 3, message: format!("cannot write output: {e}") })?;
    if emission.ok {
        Ok(())
    } else {
        Err(Failure { code: 1, message: format!("{}: check failed", emission.command) })
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
