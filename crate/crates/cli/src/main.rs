fn main() {
    std::process::exit(i32::from(entangle_cli::run()));
}
