fn main() {
    std::process::exit(billiard_knots::cli::run());
}
