fn main() {
    std::process::exit(dtcayley::cli::main_with_args(std::env::args_os()));
}
