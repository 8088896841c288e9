use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use logres::cli::{execute, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let out = execute(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
