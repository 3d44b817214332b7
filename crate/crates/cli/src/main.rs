fn main() {
    std::process::exit(lambda_dicke_cli::run(std::env::args_os()));
}
