fn main() {
    corelat::cli::init_threads();
    let code = corelat::cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
