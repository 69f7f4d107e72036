fn main() {
    std::process::exit(vicsek::cli::main_with_args(std::env::args_os()));
}
