use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use gradid_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(2);
        }
    };
    let json_to_stdout = cli.json.as_deref() == Some("-");
    if !json_to_stdout {
        for line in &report.lines {
            println!("{line}");
        }
    }
    match cli.json.as_deref() {
        Some("-") => print!("{}", report.to_json()),
        Some(path) => {
            if let Err(e) = std::fs::File::create(path).and_then(|mut f| f.write_all(report.to_json().as_bytes())) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => {}
    }
    ExitCode::from(report.exit_code())
}
