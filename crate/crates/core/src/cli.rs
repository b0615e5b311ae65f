//! The `jssec` command line: `run`, `lint` and `test`.
//!
//! Commands write to the given streams and return the process exit code,
//! so they can be driven from tests.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::check_dir;
use crate::interp::Completion;
use crate::lint::{lint_source, monitor_global_leaks, Diagnostic, RuleConfig};
use crate::run::run_program;
use crate::syntax::parse_program;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "jssec", version, about = "Run, lint and golden-test small ECMAScript 3 programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a program in a fresh realm.
    Run {
        file: PathBuf,
        /// Print the value of every top-level expression statement and
        /// report runtime leaks on standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Report security diagnostics.
    Lint {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Comma-separated rule ids to enable, e.g. W001,W005.
        #[arg(long)]
        rules: Option<String>,
    },
    /// Check `// answers` and `// raises an error` annotations.
    Test {
        dir: PathBuf,
        /// Only files whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn read(path: &Path, err: &mut dyn Write) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Some(s),
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            None
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Run { file, trace } => cmd_run(file, *trace, out, err),
        Command::Lint {
            files,
            format,
            rules,
        } => cmd_lint(files, *format, rules.as_deref(), out, err),
        Command::Test { dir, filter } => cmd_test(dir, filter.as_deref(), out, err),
    }
}

pub fn cmd_run(file: &Path, trace: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(source) = read(file, err) else {
        return EXIT_INPUT;
    };
    let program = match parse_program(&source) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{}:{}: SyntaxError: {}", file.display(), e.span, e.message);
            return EXIT_INPUT;
        }
    };
    let outcome = run_program(&program);
    if trace {
        for entry in &outcome.trace {
            let _ = writeln!(out, "{}", entry.display);
        }
        for d in monitor_global_leaks(&outcome.events) {
            let _ = writeln!(err, "{}", d.in_file(&file.display().to_string()));
        }
    }
    match &outcome.completion {
        Completion::Normal(_) => EXIT_OK,
        Completion::Error(e) => {
            let _ = writeln!(err, "{}:{}: {e}", file.display(), e.span);
            EXIT_FAIL
        }
    }
}

pub fn cmd_lint(
    files: &[PathBuf],
    format: Format,
    rules: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let config = match rules.map(RuleConfig::parse_list).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_INPUT;
        }
    };
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let mut input_error = false;
    for file in files {
        let Some(source) = read(file, err) else {
            input_error = true;
            continue;
        };
        let name = file.display().to_string();
        match lint_source(&name, &source, &config) {
            Ok(d) => diagnostics.extend(d),
            Err(e) => {
                let _ = writeln!(err, "{name}:{}: SyntaxError: {}", e.span, e.message);
                input_error = true;
            }
        }
    }
    crate::lint::sort_diagnostics(&mut diagnostics);
    match format {
        Format::Text => {
            for d in &diagnostics {
                let _ = writeln!(out, "{d}");
            }
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&diagnostics).expect("diagnostics serialize");
            let _ = writeln!(out, "{json}");
        }
    }
    if input_error {
        EXIT_INPUT
    } else if diagnostics.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

pub fn cmd_test(dir: &Path, filter: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let results = match check_dir(dir, filter) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", dir.display());
            return EXIT_INPUT;
        }
    };
    let (mut total, mut passed) = (0, 0);
    for r in &results {
        let _ = writeln!(out, "{r}");
        total += r.total;
        passed += r.passed;
    }
    let failing = results.iter().filter(|r| !r.is_pass()).count();
    let _ = writeln!(
        out,
        "{} files, {passed}/{total} expectations passed, {failing} files failed",
        results.len()
    );
    if failing == 0 {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
