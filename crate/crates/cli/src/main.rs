use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use snakejones_cli::{emit, run, Request};

fn main() -> ExitCode {
    let req = match Request::try_parse() {
        Ok(req) => req,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&req).and_then(|rep| emit(&rep, req.format)) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("snakejones: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
