fn main() {
    let code = icekernel::cli::run(std::env::args_os());
    std::process::exit(code);
}
