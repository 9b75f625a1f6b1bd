fn main() {
    let code = lattice_entropy::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
