fn main() {
    std::process::exit(quatsuper::cli::run_from_env());
}
