fn main() {
    std::process::exit(recollement::cli::main_with(std::env::args_os()));
}
