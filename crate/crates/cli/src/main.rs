fn main() {
    std::process::exit(hydrochar_cli::main_with_args(std::env::args_os()));
}
