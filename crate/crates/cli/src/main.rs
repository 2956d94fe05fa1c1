use clap::Parser;

fn main() {
    let cli = dotgate_cli::Cli::parse();
    if let Err(e) = dotgate_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
