use clap::Parser;

fn main() {
    std::process::exit(mixlab::cli::main(mixlab::cli::Args::parse()));
}
