fn main() {
    let code = topcoh::cli::run(std::env::args_os());
    std::process::exit(code);
}
