fn main() {
    std::process::exit(morse_scs::cli::main_with_args(std::env::args_os()));
}
