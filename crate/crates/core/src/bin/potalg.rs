fn main() -> std::process::ExitCode {
    potalg::cli::main_with(std::env::args_os())
}
