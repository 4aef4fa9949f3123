fn main() {
    std::process::exit(pdmcs::run(std::env::args_os()));
}
