fn main() {
    std::process::exit(fisheaf::cli::run(std::env::args_os()));
}
