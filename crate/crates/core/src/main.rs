fn main() {
    std::process::exit(pcheck::cli::run(std::env::args_os()));
}
