fn main() {
    std::process::exit(span_shrink::cli::main_with_args(std::env::args_os()));
}
