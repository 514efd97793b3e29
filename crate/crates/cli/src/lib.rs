//! Command-line front-end: expression parsing, subcommand dispatch and
//! report rendering.

pub mod commands;
pub mod parse;
pub mod report;

use clap::Parser;

pub use commands::{execute, verdict_text, Cli, CliError, Command};
pub use parse::{parse_form, parse_poly, ErrorKind, ParseError};
pub use report::{emit, Exit, Report, Value};

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn quote(arg: &str) -> String {
    let plain = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.,/=@+^".contains(c));
    if plain {
        arg.to_string()
    } else {
        format!("\"{}\"", arg.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Replaces each `@path` argument by the lines of that file, one argument
/// per line; blank lines and lines starting with `#` are skipped. `@@x`
/// stands for the literal argument `@x`.
pub fn expand_args(args: Vec<String>) -> std::io::Result<Vec<String>> {
    let mut out = Vec::with_capacity(args.len());
    for (i, a) in args.into_iter().enumerate() {
        match a.strip_prefix('@') {
            Some(rest) if i > 0 && rest.starts_with('@') => out.push(rest.to_string()),
            Some(path) if i > 0 => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))?;
                out.extend(
                    text.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(str::to_string),
                );
            }
            _ => out.push(a),
        }
    }
    Ok(out)
}

/// Runs the tool on already expanded arguments (program name first).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() {
                Exit::Input.code()
            } else {
                0
            };
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| quote(a))
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli.command, &echo) {
        Ok(report) => Outcome {
            stdout: emit(&report, cli.command.flags().json),
            stderr: String::new(),
            code: report.exit.code(),
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit().code(),
        },
    }
}
