fn main() {
    std::process::exit(surfint::cli::cli_main());
}
