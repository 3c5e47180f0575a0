use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = posray::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(&inv.stdout);
    let _ = std::io::stderr().write_all(inv.stderr.as_bytes());
    ExitCode::from(inv.code)
}
