fn main() {
    std::process::exit(rla::cli::run(std::env::args_os()));
}
