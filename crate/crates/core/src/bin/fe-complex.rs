fn main() {
    fe_complex::cli::configure_threads();
    std::process::exit(fe_complex::cli::main_with_args(std::env::args_os()));
}
