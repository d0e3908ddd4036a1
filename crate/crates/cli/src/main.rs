fn main() {
    std::process::exit(ldoi_cli::run(std::env::args_os()));
}
