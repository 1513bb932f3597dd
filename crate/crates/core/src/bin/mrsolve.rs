fn main() {
    std::process::exit(mrsolve::cli::run_cli(std::env::args_os()));
}
