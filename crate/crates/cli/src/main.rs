mod cli;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};

fn main() -> ExitCode {
    let args = Cli::parse();
    let result = match &args.command {
        Command::Eval(a) => commands::eval(a),
        Command::Sample(a) => commands::sample_cmd(a),
        Command::Fit(a) => commands::fit(a, "fit"),
        Command::Compare(a) => commands::fit(a, "compare"),
        Command::Simulate(a) => commands::simulate(a),
        Command::Modes(a) => commands::modes(a),
        Command::Fixture(a) => commands::fixture(a),
    };
    match result {
        Ok(payload) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = out.write_all(payload.as_bytes()).and_then(|_| out.flush());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tlss: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
