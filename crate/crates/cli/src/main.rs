use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rtlink::Spin;
use rtlink_cli::crosscheck::{run_crosscheck, CrosscheckConfig};
use rtlink_cli::{run_batch, run_invariant, CliError, Format, Pipeline};

#[derive(Parser)]
#[command(name = "rtlink", version, about = "Exact colored U_q(sl2) invariants of braid closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one braid spec, or every line of a spec file.
    Invariant {
        /// "n=2; colors=1/2,1/2; word=+1 +1 +1", or a path to a file of such lines
        #[arg(long)]
        spec: String,
        #[arg(long, default_value = "rt")]
        pipeline: Pipeline,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Check the pipelines against each other and against the skein oracle.
    Crosscheck {
        #[arg(long, default_value_t = 3)]
        max_strands: usize,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
        #[arg(long, default_value = "1")]
        max_spin: Spin,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn report(err: &CliError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Invariant { spec, pipeline, format } => {
            if Path::new(&spec).is_file() {
                let contents = match std::fs::read_to_string(&spec) {
                    Ok(c) => c,
                    Err(source) => return report(&CliError::Io { path: spec, source }),
                };
                let mut worst = 0;
                for (line, result) in run_batch(&contents, pipeline, format) {
                    match result {
                        Ok(out) => print!("{out}"),
                        Err(e) => {
                            eprintln!("line {line}: error: {e}");
                            worst = worst.max(e.exit_code());
                        }
                    }
                }
                ExitCode::from(worst as u8)
            } else {
                match run_invariant(&spec, pipeline, format) {
                    Ok(out) => {
                        print!("{out}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => report(&e),
                }
            }
        }
        Command::Crosscheck { max_strands, max_length, max_spin, seed } => {
            let report = run_crosscheck(&CrosscheckConfig { max_strands, max_length, max_spin, seed });
            print!("{report}");
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
