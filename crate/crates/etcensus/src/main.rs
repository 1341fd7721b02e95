fn main() { std::process::exit(etcensus::cli::run()) }
