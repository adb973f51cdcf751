fn main() {
    std::process::exit(tas_sop::cli::main_entry());
}
