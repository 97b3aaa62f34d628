fn main() {
    std::process::exit(quasiprob::cli::main_with_args(std::env::args_os()));
}
