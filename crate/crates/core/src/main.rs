use std::process::ExitCode;

fn main() -> ExitCode {
    ifdr::cli::main_with_args(std::env::args_os())
}
