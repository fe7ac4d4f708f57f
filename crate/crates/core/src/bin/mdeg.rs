fn main() {
    std::process::exit(mdeg::cli::main());
}
