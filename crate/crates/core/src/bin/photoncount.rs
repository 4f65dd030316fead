fn main() {
    std::process::exit(photoncount::cli::run(std::env::args_os()));
}
