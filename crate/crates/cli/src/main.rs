use clap::Parser;

fn main() {
    let cli = microvid_cli::Cli::parse();
    std::process::exit(microvid_cli::run(cli));
}
