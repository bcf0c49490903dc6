//! Batch front end: parse group/partition/pair documents, dispatch to the
//! core operations, and emit deterministic JSON result documents.
//!
//! Exit codes: 0 = verdict computed (whatever it is), 1 = input error,
//! 2 = budget exceeded, 3 = negative verdict under --assert. Wall time goes
//! to stderr; result documents are byte-identical across reruns and worker
//! counts.

mod run;

use std::process::ExitCode;

use clap::Parser;

use run::{Cli, RunError};

fn main() -> ExitCode {
    let start = std::time::Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let code = match run::run(&cli) {
        Ok(assert_failed) => {
            if assert_failed {
                3
            } else {
                0
            }
        }
        Err(RunError::Core(err)) => {
            let doc = gcon_core::docs::ErrorDoc::from_error(&err);
            let body = serde_json::to_string_pretty(&doc).expect("error docs serialize");
            println!("{body}");
            match err {
                gcon_core::Error::BudgetExceeded(_) => 2,
                _ => 1,
            }
        }
        Err(RunError::Io(err)) => {
            eprintln!("io error: {err}");
            1
        }
    };
    eprintln!("# wall-time-ms: {}", start.elapsed().as_millis());
    ExitCode::from(code)
}
