fn main() {
    std::process::exit(clusterbounds::cli::run_from(std::env::args_os()));
}
