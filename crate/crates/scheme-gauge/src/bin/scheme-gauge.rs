fn main() {
    std::process::exit(scheme_gauge::cli::run());
}
