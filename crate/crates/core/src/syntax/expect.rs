//! Expectation comments: `// answers <display>` and `// raises an error`.

use super::ast::{Program, Stmt};
use super::lexer::{self, LexError, TokenKind};
use super::span::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectationKind {
    Answers,
    Raises,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    /// Span of the comment itself.
    pub span: SourceSpan,
    pub kind: ExpectationKind,
    /// Expected display string; `None` for `raises`.
    pub expected: Option<String>,
}

/// An expectation paired with the expression statement it describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachedExpectation {
    pub expectation: Expectation,
    pub statement: Option<SourceSpan>,
}

pub fn extract_expectations(source: &str) -> Result<Vec<Expectation>, LexError> {
    let tokens = lexer::tokenize(source)?;
    Ok(tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Comment)
        .filter_map(|t| parse_comment(&t.lexeme).map(|(kind, expected)| Expectation {
            span: t.span,
            kind,
            expected,
        }))
        .collect())
}

fn parse_comment(lexeme: &str) -> Option<(ExpectationKind, Option<String>)> {
    let body = lexeme.strip_prefix("//")?.trim();
    if body == "raises an error" {
        return Some((ExpectationKind::Raises, None));
    }
    let rest = body.strip_prefix("answers")?;
    if !rest.starts_with(char::is_whitespace) {
        return None;
    }
    let expected = rest.trim();
    (!expected.is_empty()).then(|| (ExpectationKind::Answers, Some(expected.to_string())))
}

/// Attaches each expectation to the expression statement ending on the
/// comment's line, or failing that to the nearest statement before it.
/// Only statements outside function bodies are candidates.
pub fn attach_expectations(
    program: &Program,
    expectations: &[Expectation],
) -> Vec<AttachedExpectation> {
    let mut candidates = Vec::new();
    collect_expression_statements(&program.body, &mut candidates);

    expectations
        .iter()
        .map(|exp| {
            let comment_start = exp.span.start();
            let before = candidates.iter().filter(|s| s.end() <= comment_start);
            let same_line = before
                .clone()
                .filter(|s| s.end_line == exp.span.line)
                .max_by_key(|s| s.end());
            let statement = same_line.or_else(|| before.max_by_key(|s| s.end())).copied();
            AttachedExpectation {
                expectation: exp.clone(),
                statement,
            }
        })
        .collect()
}

fn collect_expression_statements(body: &[Stmt], out: &mut Vec<SourceSpan>) {
    for stmt in body {
        match stmt {
            Stmt::Expression(e) if !e.synthetic => out.push(e.span),
            Stmt::If {
                consequent,
                alternate,
                ..
            } => {
                collect_expression_statements(std::slice::from_ref(consequent), out);
                if let Some(alt) = alternate {
                    collect_expression_statements(std::slice::from_ref(alt), out);
                }
            }
            Stmt::For { body, .. } | Stmt::While { body, .. } | Stmt::With { body, .. } => {
                collect_expression_statements(std::slice::from_ref(body), out)
            }
            Stmt::Block { body, .. } => collect_expression_statements(body, out),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn answers_comment() {
        let exps = extract_expectations("get(\"a\") + get(\"b\"); // answers 15").unwrap();
        assert_eq!(exps.len(), 1);
        assert_eq!(exps[0].kind, ExpectationKind::Answers);
        assert_eq!(exps[0].expected.as_deref(), Some("15"));
    }

    #[test]
    fn raises_comment() {
        let exps = extract_expectations("person.age // raises an error").unwrap();
        assert_eq!(exps.len(), 1);
        assert_eq!(exps[0].kind, ExpectationKind::Raises);
        assert_eq!(exps[0].expected, None);
    }

    #[test]
    fn free_comments_are_ignored() {
        assert!(extract_expectations("// a free comment").unwrap().is_empty());
        assert!(extract_expectations("x // answersX").unwrap().is_empty());
        assert!(extract_expectations("x /* answers 1 */").unwrap().is_empty());
    }

    #[test]
    fn trailing_text_is_kept_verbatim() {
        let exps = extract_expectations("o // answers {name: 'milou'}   ").unwrap();
        assert_eq!(exps[0].expected.as_deref(), Some("{name: 'milou'}"));
    }

    #[test]
    fn attaches_to_statement_on_same_line_else_preceding() {
        let src = "a;\nb; c; // answers 1\nd;\n// answers 2\n";
        let program = parse_program(src).unwrap();
        let exps = extract_expectations(src).unwrap();
        let attached = attach_expectations(&program, &exps);
        // `c` is the last statement ending on line 2.
        assert_eq!(attached[0].statement.map(|s| (s.line, s.column)), Some((2, 4)));
        // line 4 has no statement: falls back to `d` on line 3.
        assert_eq!(attached[1].statement.map(|s| (s.line, s.column)), Some((3, 1)));
    }

    #[test]
    fn statements_inside_functions_are_not_candidates() {
        let src = "x;\nfunction f() {\n  y; // answers 3\n}";
        let program = parse_program(src).unwrap();
        let attached = attach_expectations(&program, &extract_expectations(src).unwrap());
        assert_eq!(attached[0].statement.map(|s| s.line), Some(1));
    }
}
