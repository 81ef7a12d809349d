fn main() {
    std::process::exit(poslog::cli::run_cli(std::env::args()));
}
