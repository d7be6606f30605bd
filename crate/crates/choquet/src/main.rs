fn main() {
    std::process::exit(choquet::cli::main_entry());
}
