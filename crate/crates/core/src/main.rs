fn main() {
    std::process::exit(treelen::cli::run(std::env::args_os()));
}
