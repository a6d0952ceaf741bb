fn main() {
    std::process::exit(basisgrid::cli::run(std::env::args().collect()));
}
