fn main() {
    std::process::exit(cptk::cli::cmd_dispatch(std::env::args_os()));
}
