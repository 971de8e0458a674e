fn main() {
    std::process::exit(citemodel::cli::run(std::env::args_os()));
}
