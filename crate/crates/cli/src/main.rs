use clap::Parser;

fn main() {
    let cli = ptosc_cli::Cli::parse();
    std::process::exit(ptosc_cli::run(&cli));
}
