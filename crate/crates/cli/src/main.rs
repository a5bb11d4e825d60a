use std::process::ExitCode;

use clap::Parser;

use prodnorm::args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        // help/version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    match prodnorm::execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
