fn main() {
    std::process::exit(hardy_lab::cli::run(std::env::args_os()));
}
