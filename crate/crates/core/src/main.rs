fn main() {
    let (code, out, err) = spanfact::cli::run_to_strings(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
