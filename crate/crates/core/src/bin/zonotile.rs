fn main() {
    std::process::exit(zonotile::cli::main_with_args(std::env::args_os()));
}
