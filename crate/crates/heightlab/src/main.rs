fn main() {
    std::process::exit(heightlab::cli::run(std::env::args()));
}
