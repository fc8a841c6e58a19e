fn main() {
    std::process::exit(tms_cli::run(std::env::args().collect()));
}
