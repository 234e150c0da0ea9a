use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use affine_fk_cli::args::Cli;
use affine_fk_cli::bounds;
use affine_fk_cli::error::exit;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(t) = cli.global.threads {
        if t == 0 || t > bounds::MAX_THREADS {
            eprintln!("error: --threads must be between 1 and {}", bounds::MAX_THREADS);
            return ExitCode::from(exit::USAGE as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(exit::INTERNAL as u8);
        }
    }
    match catch_unwind(AssertUnwindSafe(|| affine_fk_cli::run(&cli))) {
        Ok(Ok(resp)) => {
            println!("{}", resp.output);
            ExitCode::from(resp.code as u8)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        // The panic message has already been printed by the default hook.
        Err(_) => ExitCode::from(exit::INTERNAL as u8),
    }
}
