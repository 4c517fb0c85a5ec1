mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Demo};

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Certify(a) => commands::certify(a),
        Command::Demo(Demo::NonexistTls(a)) => commands::nonexist(a, false),
        Command::Demo(Demo::NonexistRtls(a)) => commands::nonexist(a, true),
        Command::Demo(Demo::Diagonal(a)) => commands::diagonal(a),
        Command::Demo(Demo::Sweep(a)) => commands::sweep(a),
        Command::Demo(Demo::Weakcont(a)) => commands::weakcont(a),
        Command::ClassicTls(a) => commands::classic_tls(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RTLS_LOG", "warn")).init();
    // Exit code 2 is reserved for uncertified results, so usage errors exit 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
