use clap::error::ErrorKind;
use clap::Parser;

use scattered_cli::{execute, usage_error, Cli};

fn main() {
    let (result, code) = match Cli::try_parse() {
        Ok(cli) => execute(&cli),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => usage_error(&e),
    };
    println!("{}", result.to_json());
    std::process::exit(code);
}
