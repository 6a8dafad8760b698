fn main() {
    std::process::exit(whittaker::cli::run());
}
