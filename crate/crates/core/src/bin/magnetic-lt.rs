fn main() {
    std::process::exit(magnetic_lt::cli::main_with_args(std::env::args_os()));
}
