use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args = match dweb_cli::expand_args(std::env::args().collect()) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(dweb_cli::Exit::Input.code() as u8);
        }
    };
    let out = dweb_cli::run(args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
