fn main() {
    std::process::exit(qia_cli::run_cli(std::env::args_os()));
}
