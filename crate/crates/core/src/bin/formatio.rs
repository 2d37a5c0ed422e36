fn main() {
    std::process::exit(formatio::cli::main_with_args(std::env::args_os()));
}
