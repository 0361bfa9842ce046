fn main() {
    std::process::exit(adecover::cli::run(std::env::args_os()));
}
