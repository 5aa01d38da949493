fn main() {
    std::process::exit(tetra_core::cli::main_with_args(std::env::args_os()));
}
