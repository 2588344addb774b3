use clap::Parser;
use tfd_cli::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = tfd_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
