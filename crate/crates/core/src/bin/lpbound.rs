fn main() {
    std::process::exit(lpbound::cli::run(std::env::args_os()));
}
