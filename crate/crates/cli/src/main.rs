fn main() {
    std::process::exit(weylworks_cli::run(std::env::args_os()));
}
