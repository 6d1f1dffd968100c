mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot start {threads} worker threads: {e}");
            return ExitCode::FAILURE;
        }
    }
    let result = match cli.command {
        Command::Landscape(a) => commands::landscape(a),
        Command::Optimize(a) => commands::optimize(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Verify(a) => commands::verify(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::Ensemble(a) => commands::ensemble(a),
        Command::Gen(a) => commands::gen(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
