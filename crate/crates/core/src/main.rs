fn main() {
    std::process::exit(alphamod::cli::run());
}
