fn main() {
    std::process::exit(banachlab::cli::main_entry());
}
