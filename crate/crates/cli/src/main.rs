fn main() {
    std::process::exit(cakecut_cli::run(std::env::args_os()));
}
