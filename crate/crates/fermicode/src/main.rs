fn main() {
    std::process::exit(fermicode::cli::run(std::env::args_os()));
}
