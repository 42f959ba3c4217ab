use clap::Parser;

fn main() {
    let cli = vrsp_cli::args::Cli::parse();
    if let Err(error) = vrsp_cli::run(cli) {
        eprintln!("error: {error}");
        std::process::exit(error.exit_code());
    }
}
