use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(wecopt::cli::run(std::env::args_os()))
}
