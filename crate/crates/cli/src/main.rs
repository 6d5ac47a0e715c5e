use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orthoforms_cli::cache::Cache;
use orthoforms_cli::compute::{self, ComputeOptions, Format, Target};
use orthoforms_cli::suites::{self, Suite, VerifyOptions};
use orthoforms_cli::CliError;

#[derive(Parser)]
#[command(name = "orthoforms", version, about = "Modular forms on O(2,4;Z): compute and verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one artifact.
    Compute {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        /// Series order for `hilbert`.
        #[arg(long, default_value_t = 120)]
        truncate: usize,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        attempts: usize,
        #[arg(long, default_value_t = 120)]
        truncate: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        allow_inconclusive: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        /// Include per-check wall time in the report.
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Compute {
            target,
            format,
            out,
            cache_dir,
            no_cache,
            truncate,
        } => {
            let opts = ComputeOptions {
                target,
                format,
                out,
                truncate,
                cache: Cache::resolve(cache_dir, no_cache),
            };
            if let Some(text) = compute::run(&opts)? {
                print!("{text}");
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            seed,
            attempts,
            truncate,
            workers,
            allow_inconclusive,
            report,
            cache_dir,
            no_cache,
            timings,
        } => {
            if attempts == 0 {
                return Err(CliError::Usage("--attempts must be positive".into()));
            }
            if workers == Some(0) {
                return Err(CliError::Usage("--workers must be positive".into()));
            }
            let opts = VerifyOptions {
                seed,
                attempts,
                truncate,
                allow_inconclusive,
                timings,
                cache: Cache::resolve(cache_dir, no_cache),
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = workers {
                pool = pool.num_threads(n);
            }
            let pool = pool
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            let rep = pool.install(|| suites::run(suite, &opts));
            let json = rep.to_json();
            match report {
                Some(path) => std::fs::write(&path, &json)
                    .map_err(|source| CliError::Io { path, source })?,
                None => print!("{json}"),
            }
            Ok(rep.all_passed(allow_inconclusive))
        }
    }
}
