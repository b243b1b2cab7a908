fn main() {
    std::process::exit(nongauss::cli::run(std::env::args_os()));
}
