fn main() {
    std::process::exit(qmap_cli::main_with(std::env::args_os()));
}
