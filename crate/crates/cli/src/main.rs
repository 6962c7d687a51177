fn main() {
    std::process::exit(svkit_cli::main_with_args());
}
