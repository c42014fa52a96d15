fn main() {
    std::process::exit(qlandau_cli::run(std::env::args_os()));
}
