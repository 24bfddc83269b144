fn main() {
    std::process::exit(enigma_core::cli::main_with_std());
}
