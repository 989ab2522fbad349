use std::io::Write;
use std::process::ExitCode;

use liesbe_cli::{run, EXIT_ERROR, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(report) => {
            let mut out = report.render();
            out.push('\n');
            let written = if report.status == EXIT_ERROR {
                std::io::stderr().lock().write_all(out.as_bytes())
            } else {
                std::io::stdout().lock().write_all(out.as_bytes())
            };
            match written {
                Ok(()) => ExitCode::from(report.status as u8),
                Err(_) => ExitCode::from(EXIT_ERROR as u8),
            }
        }
        Err(e) => {
            let _ = e.print();
            // --help and --version also arrive here, on stdout.
            ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK } as u8)
        }
    }
}
