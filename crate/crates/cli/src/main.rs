fn main() {
    std::process::exit(tribranch_cli::run(std::env::args_os()));
}
