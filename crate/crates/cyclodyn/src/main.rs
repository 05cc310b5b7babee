use std::process::ExitCode;

use clap::Parser;
use cyclodyn::args::Cli;
use cyclodyn::env::EnvConfig;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = match EnvConfig::from_env() {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cyclodyn::EXIT_CONFIG as u8);
        }
    };
    env.install_pool();
    ExitCode::from(cyclodyn::run(&cli, &env) as u8)
}
