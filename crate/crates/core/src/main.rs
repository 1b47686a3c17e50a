fn main() {
    std::process::exit(locc_ident::cli::run(std::env::args_os()));
}
