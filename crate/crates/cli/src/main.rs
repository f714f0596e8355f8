fn main() {
    std::process::exit(ymqm_cli::run(std::env::args_os()));
}
