use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(dominium::cli::run())
}
