use clap::Parser;

fn main() {
    let cli = debug_asp::Cli::parse();
    std::process::exit(debug_asp::run(cli));
}
