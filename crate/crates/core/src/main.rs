fn main() {
    std::process::exit(relulogic::cli::main_with_args(std::env::args_os()));
}
