use std::io;
use std::process::ExitCode;

use simcurve_cli::{run_command, RunConfig, EXIT_ERROR};

fn main() -> ExitCode {
    let config = match RunConfig::from_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = serde_json::json!({"error": "UsageError", "message": e.to_string()});
            eprintln!("{message}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let code = run_command(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
