fn main() {
    std::process::exit(qvir::cli::run(std::env::args_os()));
}
