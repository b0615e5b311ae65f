//! Tokenizer for the script subset.
//!
//! Comments are kept as tokens so the corpus runner can read expectation
//! comments; whitespace is dropped but each token remembers whether a line
//! break preceded it, which the parser uses for semicolon insertion.

use super::span::{Position, SourceSpan};
use thiserror::Error;

pub const KEYWORDS: &[&str] = &[
    "var", "function", "return", "new", "delete", "this", "if", "else", "for", "while", "with",
    "true", "false", "null", "undefined", "typeof", "in",
];

const PUNCTUATORS: &[&str] = &[
    "===", "!==", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "{", "}", "(", ")", "[", "]",
    ".", ";", ",", "<", ">", "+", "-", "*", "/", "%", "!", "=", ":",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Punctuator,
    Comment,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Raw source text of the token. String literals keep their quotes.
    pub lexeme: String,
    pub span: SourceSpan,
    /// A line terminator appeared between the previous token and this one.
    pub newline_before: bool,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punctuator && self.lexeme == p
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        self.kind == TokenKind::Keyword && self.lexeme == k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct LexError {
    pub message: String,
    pub span: SourceSpan,
}

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

fn is_id_start(c: char) -> bool {
    c == '$' || c == '_' || c.is_alphabetic()
}

fn is_id_part(c: char) -> bool {
    is_id_start(c) || c.is_alphanumeric()
}

fn is_line_terminator(c: char) -> bool {
    matches!(c, '\n' | '\r' | '\u{2028}' | '\u{2029}')
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Position {
        Position::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next().map(|(_, c)| c)
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map(|&(i, _)| i).unwrap_or(self.src.len())
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' || (c == '\r' && self.peek() != Some('\n')) || c == '\u{2028}' || c == '\u{2029}' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor {
        chars: source.char_indices().peekable(),
        src: source,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    let mut newline_before = false;

    while let Some(c) = cur.peek() {
        if is_line_terminator(c) {
            newline_before = true;
            cur.bump();
            continue;
        }
        if c.is_whitespace() || c == '\u{feff}' {
            cur.bump();
            continue;
        }

        let start = cur.pos();
        let start_off = cur.offset();
        let kind = if c == '/' && cur.peek2() == Some('/') {
            while let Some(c) = cur.peek() {
                if is_line_terminator(c) {
                    break;
                }
                cur.bump();
            }
            TokenKind::Comment
        } else if c == '/' && cur.peek2() == Some('*') {
            cur.bump();
            cur.bump();
            let mut closed = false;
            while let Some(c) = cur.bump() {
                if is_line_terminator(c) {
                    newline_before = true;
                }
                if c == '*' && cur.peek() == Some('/') {
                    cur.bump();
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(LexError {
                    message: "unterminated block comment".into(),
                    span: SourceSpan::new(start, cur.pos()),
                });
            }
            TokenKind::Comment
        } else if is_id_start(c) || c == '\\' {
            if c == '\\' {
                return Err(LexError {
                    message: "unicode escapes in identifiers are not supported".into(),
                    span: SourceSpan::new(start, start),
                });
            }
            while cur.peek().is_some_and(is_id_part) {
                cur.bump();
            }
            if is_keyword(&source[start_off..cur.offset()]) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            }
        } else if c.is_ascii_digit() || (c == '.' && cur.peek2().is_some_and(|d| d.is_ascii_digit())) {
            lex_number(&mut cur, start)?;
            TokenKind::Number
        } else if c == '"' || c == '\'' {
            lex_string(&mut cur, start)?;
            TokenKind::String
        } else {
            let rest = &source[start_off..];
            match PUNCTUATORS.iter().find(|p| rest.starts_with(**p)) {
                Some(p) => {
                    for _ in 0..p.chars().count() {
                        cur.bump();
                    }
                    TokenKind::Punctuator
                }
                None => {
                    cur.bump();
                    return Err(LexError {
                        message: format!("illegal character {c:?}"),
                        span: SourceSpan::new(start, cur.pos()),
                    });
                }
            }
        };

        let end_off = cur.offset();
        tokens.push(Token {
            kind,
            lexeme: source[start_off..end_off].to_string(),
            span: SourceSpan::new(start, cur.pos()),
            newline_before,
        });
        if kind != TokenKind::Comment {
            newline_before = false;
        }
    }
    Ok(tokens)
}

fn lex_number(cur: &mut Cursor<'_>, start: Position) -> Result<(), LexError> {
    let first = cur.peek();
    if first == Some('0') && matches!(cur.peek2(), Some('x' | 'X')) {
        cur.bump();
        cur.bump();
        let mut any = false;
        while cur.peek().is_some_and(|c| c.is_ascii_hexdigit()) {
            cur.bump();
            any = true;
        }
        if !any {
            return Err(LexError {
                message: "missing hexadecimal digits".into(),
                span: SourceSpan::new(start, cur.pos()),
            });
        }
    } else {
        while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            cur.bump();
        }
        if cur.peek() == Some('.') {
            cur.bump();
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
            }
        }
        if matches!(cur.peek(), Some('e' | 'E')) {
            cur.bump();
            if matches!(cur.peek(), Some('+' | '-')) {
                cur.bump();
            }
            if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(LexError {
                    message: "missing exponent digits".into(),
                    span: SourceSpan::new(start, cur.pos()),
                });
            }
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
            }
        }
    }
    if cur.peek().is_some_and(is_id_start) {
        return Err(LexError {
            message: "identifier starts immediately after numeric literal".into(),
            span: SourceSpan::new(start, cur.pos()),
        });
    }
    Ok(())
}

fn lex_string(cur: &mut Cursor<'_>, start: Position) -> Result<(), LexError> {
    let quote = cur.bump();
    loop {
        match cur.peek() {
            None => {
                return Err(LexError {
                    message: "unterminated string literal".into(),
                    span: SourceSpan::new(start, cur.pos()),
                })
            }
            Some(c) if is_line_terminator(c) => {
                return Err(LexError {
                    message: "unterminated string literal".into(),
                    span: SourceSpan::new(start, cur.pos()),
                })
            }
            Some('\\') => {
                cur.bump();
                // line continuation or escaped character
                if cur.peek() == Some('\r') {
                    cur.bump();
                    if cur.peek() == Some('\n') {
                        cur.bump();
                    }
                } else if cur.bump().is_none() {
                    return Err(LexError {
                        message: "unterminated string literal".into(),
                        span: SourceSpan::new(start, cur.pos()),
                    });
                }
            }
            Some(c) => {
                cur.bump();
                if Some(c) == quote {
                    return Ok(());
                }
            }
        }
    }
}

/// Decodes the value of a string-literal lexeme (quotes included).
pub fn string_value(lexeme: &str) -> Result<String, String> {
    let inner = &lexeme[1..lexeme.len() - 1];
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        let Some(e) = chars.next() else {
            return Err("dangling escape".into());
        };
        match e {
            'n' => out.push('\n'),
            't' => out.push('\t'),
            'r' => out.push('\r'),
            'b' => out.push('\u{8}'),
            'f' => out.push('\u{c}'),
            'v' => out.push('\u{b}'),
            '0' if !chars.peek().is_some_and(|d| d.is_ascii_digit()) => out.push('\0'),
            'x' => out.push(hex_escape(&mut chars, 2)?),
            'u' => out.push(hex_escape(&mut chars, 4)?),
            '\r' => {
                if chars.peek() == Some(&'\n') {
                    chars.next();
                }
            }
            '\n' | '\u{2028}' | '\u{2029}' => {}
            other => out.push(other),
        }
    }
    Ok(out)
}

fn hex_escape(chars: &mut impl Iterator<Item = char>, digits: usize) -> Result<char, String> {
    let text: String = chars.take(digits).collect();
    if text.len() != digits {
        return Err("truncated hexadecimal escape".into());
    }
    let code = u32::from_str_radix(&text, 16).map_err(|_| format!("bad escape \\{text}"))?;
    // Lone surrogates have no `char`; substitute the replacement character.
    Ok(char::from_u32(code).unwrap_or('\u{fffd}'))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.lexeme))
            .collect()
    }

    #[test]
    fn var_declaration() {
        use TokenKind::*;
        assert_eq!(
            kinds("var a = 2;"),
            vec![
                (Keyword, "var".into()),
                (Identifier, "a".into()),
                (Punctuator, "=".into()),
                (Number, "2".into()),
                (Punctuator, ";".into()),
            ]
        );
    }

    #[test]
    fn bracket_access_keeps_quote_style() {
        use TokenKind::*;
        assert_eq!(
            kinds("person['age']"),
            vec![
                (Identifier, "person".into()),
                (Punctuator, "[".into()),
                (String, "'age'".into()),
                (Punctuator, "]".into()),
            ]
        );
        assert_eq!(kinds(r#""x""#), vec![(String, r#""x""#.into())]);
    }

    #[test]
    fn unterminated_string_is_an_error() {
        let err = tokenize("\"unterminated").unwrap_err();
        assert!(err.message.contains("unterminated"));
        assert_eq!(err.span.line, 1);
        assert!(tokenize("'abc\n'").is_err());
    }

    #[test]
    fn illegal_character() {
        let err = tokenize("a @ b").unwrap_err();
        assert_eq!((err.span.line, err.span.column), (1, 3));
    }

    #[test]
    fn comments_and_newlines() {
        let toks = tokenize("a // answers 1\nb /* x\n */ c").unwrap();
        assert_eq!(toks[1].kind, TokenKind::Comment);
        assert_eq!(toks[1].lexeme, "// answers 1");
        assert!(toks[2].newline_before);
        assert!(toks[4].newline_before, "block comment spanning lines counts as a newline");
    }

    #[test]
    fn longest_punctuator_wins() {
        let lexemes: Vec<_> = kinds("a!==b===c++").into_iter().map(|(_, l)| l).collect();
        assert_eq!(lexemes, ["a", "!==", "b", "===", "c", "++"]);
    }

    #[test]
    fn numbers() {
        let lexemes: Vec<_> = kinds("1 2.5 .5 1e3 0x1F 3.").into_iter().map(|(_, l)| l).collect();
        assert_eq!(lexemes, ["1", "2.5", ".5", "1e3", "0x1F", "3."]);
        assert!(tokenize("3in").is_err());
    }

    #[test]
    fn string_escapes() {
        assert_eq!(string_value(r"'I\'m'").unwrap(), "I'm");
        assert_eq!(string_value(r#""a\nb\x41B""#).unwrap(), "a\nbAB");
    }

    #[test]
    fn spans_are_monotonic() {
        let toks = tokenize("var x = {a: 1,\n  b: 'two'}; // done").unwrap();
        for pair in toks.windows(2) {
            assert!(pair[0].span.start() <= pair[0].span.end());
            assert!(pair[0].span.end() <= pair[1].span.start());
        }
    }
}
