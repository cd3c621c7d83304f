fn main() {
    std::process::exit(crosscut::cli::run(std::env::args_os()));
}
