fn main() {
    std::process::exit(hsproof::cli::main_with_args(std::env::args_os()));
}
