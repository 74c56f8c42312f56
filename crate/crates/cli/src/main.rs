fn main() {
    std::process::exit(modlearn_cli::run_cli(std::env::args_os()));
}
