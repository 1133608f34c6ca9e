use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quatsplit::job::{self, Command, JobSpec};
use quatsplit::Error;

#[derive(Parser)]
#[command(
    name = "quatsplit",
    version,
    about = "Explicit splitting fields by iterated square roots"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Common zero of a system of quadratic forms.
    Isotropy(Common),
    /// Split a quaternion algebra by a tower of square roots.
    SplitQuaternion(Common),
    /// Corestriction along a cyclic extension.
    Corestrict(Common),
    /// Check certificates.
    Verify(Common),
    /// Run a named demonstration, or all of them.
    Demo(Common),
}

#[derive(Args)]
struct Common {
    /// JSON input: one document, a list, or one record per line ("-" for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances when no input is given.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    preset: Option<String>,
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| text = s)
    };
    res.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Isotropy(c) => (Command::Isotropy, c),
        Cmd::SplitQuaternion(c) => (Command::SplitQuaternion, c),
        Cmd::Corestrict(c) => (Command::Corestrict, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Demo(c) => (Command::Demo, c),
    };
    let result = (|| {
        let mut spec = JobSpec::new(command);
        spec.seed = common.seed;
        spec.count = common.count;
        spec.preset = common.preset.clone();
        if let Some(path) = &common.input {
            spec.inputs = job::parse_records(&read_input(path)?)?;
        }
        job::run(&spec)
    })();
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if command == Command::Verify {
        for r in &out.records {
            println!(
                "{}: {}",
                r["result"].as_str().unwrap_or("FAIL"),
                r["detail"].as_str().unwrap_or("")
            );
        }
        if common.output.is_none() {
            return ExitCode::from(out.exit_code() as u8);
        }
    }
    let text = match out.records.as_slice() {
        [one] => serde_json::to_string_pretty(one).unwrap() + "\n",
        many => many.iter().map(|r| r.to_string() + "\n").collect(),
    };
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if command != Command::Verify && command != Command::Demo || out.failures > 0 {
        eprintln!(
            "{} record(s), {} failed their check",
            out.records.len(),
            out.failures
        );
    }
    ExitCode::from(out.exit_code() as u8)
}
