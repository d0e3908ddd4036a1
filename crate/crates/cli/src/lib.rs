//! The `ldoi` command-line tool. Exit codes: 0 success, 2 validation failure,
//! 3 numeric failure, 4 usage error.

pub mod args;
mod commands;
pub mod error;
pub mod output;
mod reproduce;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;
use crate::output::{sha256_hex, to_json, RunManifest};

pub use commands::parse_triple;

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 4 } else { 0 };
        }
    };
    let started = Instant::now();
    let manifest_path = cli.manifest.clone();
    let out = match commands::run(cli.command) {
        Ok(out) => out,
        Err(e) => return report(&e),
    };

    for (path, contents) in &out.files {
        if let Err(e) = std::fs::write(path, contents) {
            return report(&CliError::Usage(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    eprint!("{}", out.stderr);

    if let Some(path) = manifest_path {
        let mut parts: Vec<&[u8]> = vec![out.stdout.as_bytes()];
        parts.extend(out.files.iter().map(|(_, c)| c.as_bytes()));
        let manifest = RunManifest {
            command_line: argv
                .iter()
                .map(|a| a.to_string_lossy().into_owned())
                .collect(),
            seeds: out.seeds.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: started.elapsed().as_secs_f64(),
            output_sha256: sha256_hex(&parts),
        };
        if let Err(e) = std::fs::write(&path, to_json(&manifest) + "\n") {
            return report(&CliError::Usage(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
    }
    match &out.failure {
        Some(e) => report(e),
        None => 0,
    }
}

fn report(e: &CliError) -> i32 {
    eprintln!("ldoi: {e}");
    e.exit_code()
}
