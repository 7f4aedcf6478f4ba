fn main() {
    std::process::exit(qmlbench::bench::cli::run(std::env::args_os()));
}
