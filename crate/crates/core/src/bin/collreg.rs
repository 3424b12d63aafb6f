fn main() {
    std::process::exit(collreg::cli::run(std::env::args_os()));
}
