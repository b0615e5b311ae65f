//! Golden-file checking: a `.js` file annotated with `// answers <display>`
//! and `// raises an error` comments is run and every annotation compared
//! against what actually happened.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use crate::run::run_program;
use crate::syntax::{
    attach_expectations, extract_expectations, parse_program, ExpectationKind, SourceSpan,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub span: SourceSpan,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusResult {
    pub file: String,
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<Failure>,
}

impl CorpusResult {
    pub fn is_pass(&self) -> bool {
        self.failed.is_empty()
    }
}

impl fmt::Display for CorpusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.is_pass() { "ok" } else { "FAILED" };
        write!(f, "{}: {}/{} passed {status}", self.file, self.passed, self.total)?;
        for failure in &self.failed {
            write!(
                f,
                "\n  {}:{}: expected {}, got {}",
                self.file, failure.span, failure.expected, failure.actual
            )?;
        }
        Ok(())
    }
}

const PARSE: &str = "<parse>";
const NO_ERROR: &str = "<no error>";
const NOT_EXECUTED: &str = "<not executed>";
const NO_STATEMENT: &str = "<no statement>";
const RAISES: &str = "raises an error";

/// Runs `source` in a fresh realm and checks its annotations.
pub fn check_source(file: &str, source: &str) -> CorpusResult {
    let parse_failure = |span: SourceSpan, message: String| CorpusResult {
        file: file.to_string(),
        total: 1,
        passed: 0,
        failed: vec![Failure {
            span,
            expected: PARSE.into(),
            actual: message,
        }],
    };
    let program = match parse_program(source) {
        Ok(p) => p,
        Err(e) => return parse_failure(e.span, e.message),
    };
    let expectations = match extract_expectations(source) {
        Ok(e) => e,
        Err(e) => return parse_failure(e.span, e.message),
    };
    let outcome = run_program(&program);
    let error_text = outcome
        .error()
        .map(|e| format!("<error: {e}>"))
        .unwrap_or_default();

    let mut failed = Vec::new();
    let mut total = 0;
    let mut raise_expected = false;
    for attached in attach_expectations(&program, &expectations) {
        total += 1;
        let exp = &attached.expectation;
        let expected = match exp.kind {
            ExpectationKind::Answers => exp.expected.clone().unwrap_or_default(),
            ExpectationKind::Raises => RAISES.to_string(),
        };
        let Some(stmt) = attached.statement else {
            failed.push(Failure {
                span: exp.span,
                expected,
                actual: NO_STATEMENT.into(),
            });
            continue;
        };
        let value = outcome
            .trace
            .iter()
            .rev()
            .find(|t| t.span == stmt)
            .map(|t| t.display.clone());
        let raised_here = outcome.failed_statement == Some(stmt);
        let actual = match (&value, raised_here) {
            (_, true) => error_text.clone(),
            (Some(v), false) => v.clone(),
            (None, false) => NOT_EXECUTED.to_string(),
        };
        let ok = match exp.kind {
            ExpectationKind::Answers => value.as_deref() == Some(expected.as_str()) && !raised_here,
            ExpectationKind::Raises => {
                raise_expected |= raised_here;
                raised_here
            }
        };
        if !ok {
            failed.push(Failure {
                span: stmt,
                expected,
                actual,
            });
        }
    }
    // An error nobody asked for fails the file even when it happens after
    // the last annotation.
    if let Some(err) = outcome.error() {
        if !raise_expected {
            total += 1;
            failed.push(Failure {
                span: err.span,
                expected: NO_ERROR.into(),
                actual: error_text.clone(),
            });
        }
    }
    CorpusResult {
        file: file.to_string(),
        total,
        passed: total - failed.len(),
        failed,
    }
}

/// The `.js` files of `dir` whose names contain `filter`, sorted by name.
pub fn corpus_files(dir: &Path, filter: Option<&str>) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
        if path.extension().is_some_and(|e| e == "js") && filter.is_none_or(|f| name.contains(f)) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Checks every matching file of `dir`.
pub fn check_dir(dir: &Path, filter: Option<&str>) -> io::Result<Vec<CorpusResult>> {
    corpus_files(dir, filter)?
        .into_iter()
        .map(|path| {
            let source = std::fs::read_to_string(&path)?;
            Ok(check_source(&path.display().to_string(), &source))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passing_file() {
        let r = check_source("t.js", "var a = 1;\na + 1; // answers 2\n'x' // answers 'x'");
        assert_eq!((r.total, r.passed), (2, 2));
    }

    #[test]
    fn mismatch_is_reported() {
        let r = check_source("t.js", "1 + 2; // answers 99");
        assert_eq!(r.failed.len(), 1);
        assert_eq!(r.failed[0].expected, "99");
        assert_eq!(r.failed[0].actual, "3");
        assert_eq!(r.passed + r.failed.len(), r.total);
    }

    #[test]
    fn raise_stops_the_file() {
        let ok = check_source("t.js", "var p;\np.age // raises an error\n");
        assert!(ok.is_pass(), "{ok}");
        let later = check_source("t.js", "var p;\np.age // raises an error\n1 // answers 1");
        assert_eq!(later.failed.len(), 1);
        assert_eq!(later.failed[0].actual, NOT_EXECUTED);
        let missing = check_source("t.js", "var p = {};\np.age // raises an error\n");
        assert_eq!(missing.failed[0].actual, "undefined");
    }

    #[test]
    fn unexpected_error_fails() {
        let r = check_source("t.js", "1 // answers 1\nnope;");
        assert_eq!(r.total, 2);
        assert_eq!(r.failed[0].expected, NO_ERROR);
        assert!(r.failed[0].actual.contains("ReferenceError"));
    }

    #[test]
    fn parse_failure() {
        let r = check_source("t.js", "var = ;");
        assert_eq!(r.failed[0].expected, PARSE);
        assert_eq!((r.total, r.passed), (1, 0));
    }
}
