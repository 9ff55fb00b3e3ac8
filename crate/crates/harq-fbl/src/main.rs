fn main() {
    std::process::exit(harq_fbl::cli::run());
}
