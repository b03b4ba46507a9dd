fn main() {
    std::process::exit(pcsp::cli::run(std::env::args_os()));
}
