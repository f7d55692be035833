fn main() {
    std::process::exit(quatflag::cli::main_with(std::env::args_os()));
}
