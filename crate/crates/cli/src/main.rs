use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use diffleaf_cli::{parse_script, run, Options, SyntaxError};

/// Runs a diffleaf script and prints one line per command.
#[derive(Parser, Debug)]
#[command(name = "diffleaf", version)]
struct Args {
    /// Script file; reads stdin when omitted or `-`.
    script: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Default degree bound for trajectories.
    #[arg(long)]
    deg: Option<u32>,
    /// Default round limit for trajectories.
    #[arg(long)]
    rounds: Option<usize>,
    /// Default jet order for identity verification.
    #[arg(long = "jet-order")]
    jet_order: Option<usize>,
    /// Print the canonical form of the script instead of running it.
    #[arg(long)]
    print: bool,
}

#[derive(Serialize)]
struct JsonSyntaxError<'a> {
    line: usize,
    column: usize,
    expected: &'a [String],
    found: &'a str,
    message: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonSyntaxReport<'a> {
    syntax_errors: Vec<JsonSyntaxError<'a>>,
    exit_code: i32,
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn read_source(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn report_syntax(errors: &[SyntaxError], json: bool) {
    if json {
        let doc = JsonSyntaxReport {
            syntax_errors: errors
                .iter()
                .map(|e| JsonSyntaxError {
                    line: e.line,
                    column: e.column,
                    expected: &e.expected,
                    found: &e.found,
                    message: e.message.as_deref(),
                })
                .collect(),
            exit_code: 2,
        };
        emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializes")));
    } else {
        for e in errors {
            eprintln!("syntax error: {e}");
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let src = match read_source(&args.script) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("diffleaf: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let statements = match parse_script(&src) {
        Ok(s) => s,
        Err(errors) => {
            report_syntax(&errors, args.json);
            return ExitCode::from(2);
        }
    };
    if args.print {
        emit(&diffleaf_cli::print_script(&statements));
        return ExitCode::SUCCESS;
    }
    let options = Options { deg: args.deg, rounds: args.rounds, jet_order: args.jet_order };
    let report = run(&statements, options);
    if args.json {
        emit(&format!("{}\n", report.to_json()));
    } else {
        emit(&report.to_text());
    }
    ExitCode::from(report.exit_code as u8)
}
