fn main() {
    std::process::exit(minorkit_cli::run(std::env::args_os()));
}
