use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = latmin_cli::run(std::env::args().skip(1));
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&out).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
