mod args;
mod commands;
mod error;
mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use args::Cli;
use commands::Output;

/// Exit code for usage, input and runtime errors; `verify` owns 0, 1 and 2.
const ERROR_EXIT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ERROR_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(ERROR_EXIT);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(ERROR_EXIT);
        }
    }
    let start = Instant::now();
    let result = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(ERROR_EXIT);
        }
    };
    let text = match result.output {
        Output::Svg(svg) => svg,
        Output::Json(payload) => {
            let report = json!({
                "tool": "cheby-ramsey",
                "version": env!("CARGO_PKG_VERSION"),
                "command": cli.command.name(),
                "seed": cli.seed,
                "config": result.config,
                "payload": payload,
                "determinism": { "payload_independent_of_threads": true },
                "runtime": {
                    "threads": rayon::current_num_threads(),
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                },
            });
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(ERROR_EXIT);
    }
    ExitCode::from(result.exit)
}
