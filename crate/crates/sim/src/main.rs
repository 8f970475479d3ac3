fn main() {
    std::process::exit(pac_sim::cli::main_with_args(std::env::args_os()));
}
