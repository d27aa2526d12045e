fn main() {
    std::process::exit(pralg::cli::run(std::env::args_os()));
}
