fn main() {
    std::process::exit(fglobs::cli::main_with_args(std::env::args_os()));
}
