fn main() -> std::process::ExitCode {
    knotbound::cli::main_with_args(std::env::args_os())
}
