fn main() {
    std::process::exit(stringy::harness::cli::cli_main(std::env::args_os()));
}
