use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let porcelain = std::env::args().skip(1).any(|a| a == "--porcelain");
    let report = bns::cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    let body = if porcelain {
        &report.porcelain
    } else {
        &report.text
    };
    let written = if report.exit_code == 0 {
        std::io::stdout().write_all(body.as_bytes())
    } else {
        std::io::stderr().write_all(body.as_bytes())
    };
    match written {
        Ok(()) => ExitCode::from(report.exit_code as u8),
        Err(_) => ExitCode::from(2),
    }
}
