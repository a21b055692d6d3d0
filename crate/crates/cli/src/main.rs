use clap::error::ErrorKind;
use clap::Parser;

use dephase_cli::{execute, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not configuration errors
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = execute(&cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code);
    }
}
