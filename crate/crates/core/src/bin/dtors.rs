fn main() {
    std::process::exit(dtors::cli::main_with_args(std::env::args_os()));
}
