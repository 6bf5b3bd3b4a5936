fn main() {
    std::process::exit(fuzzyloc_cli::main_with_args(std::env::args_os()));
}
