use std::process::ExitCode;

use clap::Parser;
use mirrorlat::cli::{run, Cli};

fn init_threads() {
    let Ok(v) = std::env::var("MIRRORLAT_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring MIRRORLAT_THREADS={v:?}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    init_threads();
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &cli.command.common().output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.document) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{}", out.document),
    }
    ExitCode::from(out.outcome.exit_code() as u8)
}
