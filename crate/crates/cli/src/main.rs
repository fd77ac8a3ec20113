use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out, err) = equilog_cli::run(std::env::args_os());
    if !out.is_empty() {
        println!("{out}");
    }
    if !err.is_empty() {
        eprintln!("{err}");
    }
    ExitCode::from(code as u8)
}
