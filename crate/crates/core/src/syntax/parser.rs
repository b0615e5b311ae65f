//! Recursive-descent parser producing [`Program`] trees.
//!
//! Semicolons may be omitted where the next token starts on a new line and
//! cannot continue the current statement. A statement starting with `{` is
//! read as an object literal when it looks like one (`{key: ...` or `{}`
//! followed by an operator); the subset has no labels, so such text could
//! never be a valid block.

use std::rc::Rc;

use thiserror::Error;

use super::ast::*;
use super::lexer::{self, LexError, Token, TokenKind};
use super::span::{Position, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError {
            message: e.message,
            span: e.span,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

pub fn parse_program(source: &str) -> PResult<Program> {
    let tokens: Vec<Token> = lexer::tokenize(source)?
        .into_iter()
        .filter(|t| t.kind != TokenKind::Comment)
        .collect();
    let eof = tokens
        .last()
        .map(|t| t.span.end())
        .unwrap_or(Position::new(1, 1));
    let mut parser = Parser {
        tokens,
        pos: 0,
        prev_end: Position::new(1, 1),
        eof,
        function_depth: 0,
        nesting: 0,
    };
    let mut body = Vec::new();
    while !parser.at_end() {
        body.push(parser.statement()?);
    }
    Ok(Program {
        body,
        span: SourceSpan::new(Position::new(1, 1), eof),
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prev_end: Position,
    eof: Position,
    function_depth: usize,
    nesting: usize,
}

/// Deeper syntax is rejected so evaluation depth stays bounded.
const MAX_NESTING: usize = 1000;

fn binary_precedence(tok: &Token) -> Option<(BinaryOp, u8)> {
    if tok.kind != TokenKind::Punctuator {
        return None;
    }
    let op = match tok.lexeme.as_str() {
        "||" => (BinaryOp::Or, 1),
        "&&" => (BinaryOp::And, 2),
        "==" => (BinaryOp::Eq, 3),
        "!=" => (BinaryOp::NotEq, 3),
        "===" => (BinaryOp::StrictEq, 3),
        "!==" => (BinaryOp::StrictNotEq, 3),
        "<" => (BinaryOp::Lt, 4),
        "<=" => (BinaryOp::LtEq, 4),
        ">" => (BinaryOp::Gt, 4),
        ">=" => (BinaryOp::GtEq, 4),
        "+" => (BinaryOp::Add, 5),
        "-" => (BinaryOp::Sub, 5),
        "*" => (BinaryOp::Mul, 6),
        "/" => (BinaryOp::Div, 6),
        "%" => (BinaryOp::Mod, 6),
        _ => return None,
    };
    Some(op)
}

fn parse_number(lexeme: &str) -> f64 {
    if let Some(hex) = lexeme.strip_prefix("0x").or_else(|| lexeme.strip_prefix("0X")) {
        return hex
            .chars()
            .fold(0.0, |acc, d| acc * 16.0 + d.to_digit(16).unwrap_or(0) as f64);
    }
    let text = if lexeme.ends_with('.') {
        format!("{lexeme}0")
    } else {
        lexeme.to_string()
    };
    text.parse().unwrap_or(f64::NAN)
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&Token> {
        self.tokens.get(self.pos + n)
    }

    fn check_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn check_keyword(&self, k: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(k))
    }

    fn next_pos(&self) -> Position {
        self.peek().map(|t| t.span.start()).unwrap_or(self.eof)
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        self.pos += 1;
        self.prev_end = tok.span.end();
        tok
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.check_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                message: format!("expected {expected} but found '{}'", t.lexeme),
                span: t.span,
            },
            None => ParseError {
                message: format!("expected {expected} but reached end of input"),
                span: SourceSpan::new(self.eof, self.eof),
            },
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Token> {
        if self.check_punct(p) {
            Ok(self.advance())
        } else {
            Err(self.error_here(&format!("'{p}'")))
        }
    }

    fn expect_identifier(&mut self) -> PResult<Token> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Ok(self.advance()),
            _ => Err(self.error_here("identifier")),
        }
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.deepen(1)?;
        let result = stacker::maybe_grow(64 * 1024, 1024 * 1024, || f(self));
        self.nesting -= 1;
        result
    }

    fn deepen(&mut self, by: usize) -> PResult<()> {
        self.nesting += by;
        if self.nesting > MAX_NESTING {
            let span = self.peek().map_or(SourceSpan::new(self.eof, self.eof), |t| t.span);
            self.nesting -= by;
            return Err(ParseError {
                message: "program is nested too deeply".into(),
                span,
            });
        }
        Ok(())
    }

    fn span_from(&self, start: Position) -> SourceSpan {
        SourceSpan::new(start, self.prev_end.max(start))
    }

    fn consume_semicolon(&mut self) -> PResult<()> {
        if self.eat_punct(";") {
            return Ok(());
        }
        match self.peek() {
            None => Ok(()),
            Some(t) if t.is_punct("}") || t.newline_before => Ok(()),
            Some(_) => Err(self.error_here("';'")),
        }
    }

    // ----- statements -----

    fn statement(&mut self) -> PResult<Stmt> {
        self.nested(|p| p.statement_inner())
    }

    fn statement_inner(&mut self) -> PResult<Stmt> {
        let Some(tok) = self.peek() else {
            return Err(self.error_here("statement"));
        };
        let start = tok.span.start();
        if tok.is_punct("{") {
            if self.looks_like_object_literal() {
                return self.expression_statement();
            }
            return self.block();
        }
        if tok.is_punct(";") {
            self.advance();
            return Ok(Stmt::Empty(self.span_from(start)));
        }
        if tok.kind == TokenKind::Keyword {
            match tok.lexeme.as_str() {
                "var" => {
                    let decl = self.var_declaration()?;
                    self.consume_semicolon()?;
                    return Ok(Stmt::Var(VarDecl {
                        span: self.span_from(start),
                        ..decl
                    }));
                }
                "function"
                    if self
                        .peek_at(1)
                        .is_some_and(|t| t.kind == TokenKind::Identifier) =>
                {
                    let def = self.function(true)?;
                    return Ok(Stmt::Function(def));
                }
                "return" => {
                    if self.function_depth == 0 {
                        return Err(ParseError {
                            message: "'return' outside of a function".into(),
                            span: tok.span,
                        });
                    }
                    self.advance();
                    let argument = match self.peek() {
                        None => None,
                        Some(t) if t.is_punct(";") || t.is_punct("}") => None,
                        Some(_) => Some(self.expression()?),
                    };
                    self.consume_semicolon()?;
                    return Ok(Stmt::Return {
                        argument,
                        span: self.span_from(start),
                    });
                }
                "if" => {
                    self.advance();
                    self.expect_punct("(")?;
                    let test = self.expression()?;
                    self.expect_punct(")")?;
                    let consequent = Box::new(self.statement()?);
                    let alternate = if self.check_keyword("else") {
                        self.advance();
                        Some(Box::new(self.statement()?))
                    } else {
                        None
                    };
                    return Ok(Stmt::If {
                        test,
                        consequent,
                        alternate,
                        span: self.span_from(start),
                    });
                }
                "for" => return self.for_statement(),
                "while" => {
                    self.advance();
                    self.expect_punct("(")?;
                    let test = self.expression()?;
                    self.expect_punct(")")?;
                    let body = Box::new(self.statement()?);
                    return Ok(Stmt::While {
                        test,
                        body,
                        span: self.span_from(start),
                    });
                }
                "with" => {
                    self.advance();
                    self.expect_punct("(")?;
                    let object = self.expression()?;
                    self.expect_punct(")")?;
                    let body = Box::new(self.statement()?);
                    return Ok(Stmt::With {
                        object,
                        body,
                        span: self.span_from(start),
                    });
                }
                "else" | "in" => return Err(self.error_here("statement")),
                _ => {}
            }
        }
        self.expression_statement()
    }

    fn looks_like_object_literal(&self) -> bool {
        let (Some(first), Some(second)) = (self.peek_at(1), self.peek_at(2)) else {
            return false;
        };
        let key_like = matches!(
            first.kind,
            TokenKind::Identifier | TokenKind::Keyword | TokenKind::String | TokenKind::Number
        );
        if key_like && second.is_punct(":") {
            return true;
        }
        first.is_punct("}")
            && !second.newline_before
            && (binary_precedence(second).is_some() || second.is_punct("[") || second.is_punct("."))
    }

    fn block(&mut self) -> PResult<Stmt> {
        let start = self.expect_punct("{")?.span.start();
        let mut body = Vec::new();
        while !self.check_punct("}") {
            if self.at_end() {
                return Err(self.error_here("'}'"));
            }
            body.push(self.statement()?);
        }
        self.advance();
        Ok(Stmt::Block {
            body,
            span: self.span_from(start),
        })
    }

    fn expression_statement(&mut self) -> PResult<Stmt> {
        let start = self.next_pos();
        let expr = self.expression()?;
        self.consume_semicolon()?;
        Ok(Stmt::Expression(ExprStmt {
            expr,
            span: self.span_from(start),
            synthetic: false,
        }))
    }

    /// `var a = 1, b` without the trailing semicolon.
    fn var_declaration(&mut self) -> PResult<VarDecl> {
        let start = self.advance().span.start();
        let mut declarations = Vec::new();
        loop {
            let name_tok = self.expect_identifier()?;
            let init = if self.eat_punct("=") {
                Some(self.assignment()?)
            } else {
                None
            };
            declarations.push(VarDeclarator {
                name: name_tok.lexeme.clone(),
                name_span: name_tok.span,
                init,
                span: self.span_from(name_tok.span.start()),
            });
            if !self.eat_punct(",") {
                break;
            }
        }
        Ok(VarDecl {
            declarations,
            span: self.span_from(start),
        })
    }

    fn for_statement(&mut self) -> PResult<Stmt> {
        let start = self.advance().span.start();
        self.expect_punct("(")?;
        let init = if self.check_punct(";") {
            None
        } else if self.check_keyword("var") {
            Some(ForInit::Var(self.var_declaration()?))
        } else {
            Some(ForInit::Expr(self.expression()?))
        };
        self.expect_punct(";")?;
        let test = if self.check_punct(";") {
            None
        } else {
            Some(self.expression()?)
        };
        self.expect_punct(";")?;
        let update = if self.check_punct(")") {
            None
        } else {
            Some(self.expression()?)
        };
        self.expect_punct(")")?;
        let body = Box::new(self.statement()?);
        Ok(Stmt::For {
            init,
            test,
            update,
            body,
            span: self.span_from(start),
        })
    }

    fn function(&mut self, is_declaration: bool) -> PResult<Rc<FunctionDef>> {
        let start = self.advance().span.start();
        let name = match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Some(self.advance().lexeme),
            _ if is_declaration => return Err(self.error_here("function name")),
            _ => None,
        };
        self.expect_punct("(")?;
        let mut params = Vec::new();
        if !self.check_punct(")") {
            loop {
                params.push(self.expect_identifier()?.lexeme);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        self.expect_punct("{")?;
        self.function_depth += 1;
        let mut body = Vec::new();
        while !self.check_punct("}") {
            if self.at_end() {
                return Err(self.error_here("'}'"));
            }
            body.push(self.statement()?);
        }
        self.function_depth -= 1;
        self.advance();
        Ok(Rc::new(FunctionDef::new(
            name,
            params,
            body,
            self.span_from(start),
            is_declaration,
        )))
    }

    // ----- expressions -----

    pub fn expression(&mut self) -> PResult<Expr> {
        self.assignment()
    }

    fn assignment(&mut self) -> PResult<Expr> {
        self.nested(|p| p.assignment_inner())
    }

    fn assignment_inner(&mut self) -> PResult<Expr> {
        let target = self.binary(0)?;
        if self.check_punct("=") {
            if !matches!(
                target.kind,
                ExprKind::Identifier(_) | ExprKind::Member { .. } | ExprKind::Index { .. }
            ) {
                return Err(ParseError {
                    message: "invalid assignment target".into(),
                    span: target.span,
                });
            }
            self.advance();
            let value = self.assignment()?;
            let span = target.span.to(value.span);
            return Ok(Expr {
                kind: ExprKind::Assign {
                    target: Box::new(target),
                    value: Box::new(value),
                },
                span,
            });
        }
        Ok(target)
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut left = self.unary()?;
        // Left-leaning chains nest as deeply as right-leaning ones.
        let mut chained = 0;
        while let Some((op, prec)) = self.peek().and_then(binary_precedence) {
            if prec <= min_prec {
                break;
            }
            self.deepen(1)?;
            chained += 1;
            self.advance();
            let right = self.binary(prec)?;
            let span = left.span.to(right.span);
            left = Expr {
                kind: ExprKind::Binary {
                    op,
                    left: Box::new(left),
                    right: Box::new(right),
                },
                span,
            };
        }
        self.nesting -= chained;
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Expr> {
        self.nested(|p| p.unary_inner())
    }

    fn unary_inner(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek() else {
            return Err(self.error_here("expression"));
        };
        let start = tok.span.start();
        let op = match (tok.kind, tok.lexeme.as_str()) {
            (TokenKind::Punctuator, "!") => Some(UnaryOp::Not),
            (TokenKind::Punctuator, "-") => Some(UnaryOp::Minus),
            (TokenKind::Keyword, "typeof") => Some(UnaryOp::Typeof),
            _ => None,
        };
        if let Some(op) = op {
            self.advance();
            let argument = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Unary {
                    op,
                    argument: Box::new(argument),
                },
                span: self.span_from(start),
            });
        }
        if tok.is_keyword("delete") {
            self.advance();
            let argument = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Delete(Box::new(argument)),
                span: self.span_from(start),
            });
        }
        if tok.is_punct("++") || tok.is_punct("--") {
            let op = if tok.is_punct("++") {
                UpdateOp::Increment
            } else {
                UpdateOp::Decrement
            };
            self.advance();
            let target = self.unary()?;
            check_update_target(&target)?;
            return Ok(Expr {
                kind: ExprKind::Update {
                    op,
                    prefix: true,
                    target: Box::new(target),
                },
                span: self.span_from(start),
            });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let expr = self.call_or_member()?;
        let op = match self.peek() {
            Some(t) if !t.newline_before && t.is_punct("++") => UpdateOp::Increment,
            Some(t) if !t.newline_before && t.is_punct("--") => UpdateOp::Decrement,
            _ => return Ok(expr),
        };
        check_update_target(&expr)?;
        self.advance();
        let span = self.span_from(expr.span.start());
        Ok(Expr {
            kind: ExprKind::Update {
                op,
                prefix: false,
                target: Box::new(expr),
            },
            span,
        })
    }

    fn call_or_member(&mut self) -> PResult<Expr> {
        let mut expr = if self.check_keyword("new") {
            self.new_expression()?
        } else {
            self.primary()?
        };
        let mut chained = 0;
        loop {
            self.deepen(1)?;
            chained += 1;
            if self.check_punct("(") {
                let args = self.arguments()?;
                let span = self.span_from(expr.span.start());
                expr = Expr {
                    kind: ExprKind::Call {
                        callee: Box::new(expr),
                        args,
                    },
                    span,
                };
            } else if !self.member_suffix(&mut expr)? {
                self.nesting -= chained;
                return Ok(expr);
            }
        }
    }

    /// Applies one `.name` or `[expr]` suffix; returns false if none follows.
    fn member_suffix(&mut self, expr: &mut Expr) -> PResult<bool> {
        let start = expr.span.start();
        if self.eat_punct(".") {
            let property = match self.peek() {
                Some(t) if matches!(t.kind, TokenKind::Identifier | TokenKind::Keyword) => {
                    self.advance().lexeme
                }
                _ => return Err(self.error_here("property name")),
            };
            let object = std::mem::replace(expr, placeholder());
            *expr = Expr {
                kind: ExprKind::Member {
                    object: Box::new(object),
                    property,
                },
                span: self.span_from(start),
            };
            Ok(true)
        } else if self.eat_punct("[") {
            let index = self.expression()?;
            self.expect_punct("]")?;
            let object = std::mem::replace(expr, placeholder());
            *expr = Expr {
                kind: ExprKind::Index {
                    object: Box::new(object),
                    index: Box::new(index),
                },
                span: self.span_from(start),
            };
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn new_expression(&mut self) -> PResult<Expr> {
        let start = self.advance().span.start();
        let mut callee = if self.check_keyword("new") {
            self.new_expression()?
        } else {
            self.primary()?
        };
        while self.member_suffix(&mut callee)? {}
        let args = if self.check_punct("(") {
            self.arguments()?
        } else {
            Vec::new()
        };
        Ok(Expr {
            kind: ExprKind::New {
                callee: Box::new(callee),
                args,
            },
            span: self.span_from(start),
        })
    }

    fn arguments(&mut self) -> PResult<Vec<Expr>> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if self.eat_punct(")") {
            return Ok(args);
        }
        loop {
            args.push(self.assignment()?);
            if self.eat_punct(")") {
                return Ok(args);
            }
            self.expect_punct(",")?;
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error_here("expression"));
        };
        let start = tok.span.start();
        let kind = match tok.kind {
            TokenKind::Identifier => {
                self.advance();
                ExprKind::Identifier(tok.lexeme)
            }
            TokenKind::Number => {
                self.advance();
                ExprKind::Literal(Literal::Number(parse_number(&tok.lexeme)))
            }
            TokenKind::String => {
                self.advance();
                let value = lexer::string_value(&tok.lexeme).map_err(|message| ParseError {
                    message,
                    span: tok.span,
                })?;
                ExprKind::Literal(Literal::String(value.into()))
            }
            TokenKind::Keyword => match tok.lexeme.as_str() {
                "this" => {
                    self.advance();
                    ExprKind::This
                }
                "true" | "false" => {
                    self.advance();
                    ExprKind::Literal(Literal::Boolean(tok.lexeme == "true"))
                }
                "null" => {
                    self.advance();
                    ExprKind::Literal(Literal::Null)
                }
                "undefined" => {
                    self.advance();
                    ExprKind::Literal(Literal::Undefined)
                }
                "function" => ExprKind::Function(self.function(false)?),
                _ => return Err(self.error_here("expression")),
            },
            TokenKind::Punctuator => match tok.lexeme.as_str() {
                "(" => {
                    self.advance();
                    let inner = self.expression()?;
                    self.expect_punct(")")?;
                    // Parentheses only group; `(o.f)()` keeps its member shape.
                    return Ok(Expr {
                        kind: inner.kind,
                        span: self.span_from(start),
                    });
                }
                "[" => self.array_literal()?,
                "{" => self.object_literal()?,
                _ => return Err(self.error_here("expression")),
            },
            TokenKind::Comment => unreachable!("comments are filtered before parsing"),
        };
        Ok(Expr {
            kind,
            span: self.span_from(start),
        })
    }

    fn array_literal(&mut self) -> PResult<ExprKind> {
        self.advance();
        let mut elements = Vec::new();
        while !self.check_punct("]") {
            elements.push(self.assignment()?);
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct("]")?;
        Ok(ExprKind::Array(elements))
    }

    fn object_literal(&mut self) -> PResult<ExprKind> {
        self.advance();
        let mut entries = Vec::new();
        while !self.check_punct("}") {
            let Some(tok) = self.peek().cloned() else {
                return Err(self.error_here("'}'"));
            };
            let key = match tok.kind {
                TokenKind::Identifier | TokenKind::Keyword => tok.lexeme.clone(),
                TokenKind::String => {
                    lexer::string_value(&tok.lexeme).map_err(|message| ParseError {
                        message,
                        span: tok.span,
                    })?
                }
                TokenKind::Number => {
                    crate::number::number_to_string(parse_number(&tok.lexeme))
                }
                _ => return Err(self.error_here("property name")),
            };
            self.advance();
            self.expect_punct(":")?;
            let value = self.assignment()?;
            entries.push(ObjectEntry {
                key,
                key_span: tok.span,
                value,
            });
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct("}")?;
        Ok(ExprKind::Object(entries))
    }
}

fn check_update_target(target: &Expr) -> PResult<()> {
    match target.kind {
        ExprKind::Identifier(_) | ExprKind::Member { .. } | ExprKind::Index { .. } => Ok(()),
        _ => Err(ParseError {
            message: "invalid increment/decrement operand".into(),
            span: target.span,
        }),
    }
}

fn placeholder() -> Expr {
    Expr {
        kind: ExprKind::Literal(Literal::Undefined),
        span: SourceSpan::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr_of(src: &str) -> ExprKind {
        let program = parse_program(src).unwrap();
        match program.body.into_iter().next() {
            Some(Stmt::Expression(s)) => s.expr.kind,
            other => panic!("expected expression statement, got {other:?}"),
        }
    }

    #[test]
    fn object_literal_keeps_source_order() {
        let program = parse_program("var object = {a : 10, b: 5};").unwrap();
        let Stmt::Var(decl) = &program.body[0] else {
            panic!()
        };
        let Some(Expr {
            kind: ExprKind::Object(entries),
            ..
        }) = &decl.declarations[0].init
        else {
            panic!()
        };
        let keys: Vec<_> = entries.iter().map(|e| e.key.as_str()).collect();
        assert_eq!(keys, ["a", "b"]);
    }

    #[test]
    fn delete_of_index_on_literal() {
        let ExprKind::Delete(arg) = expr_of("delete {a: 0, b: 5}['b'];") else {
            panic!()
        };
        let ExprKind::Index { object, index } = arg.kind else {
            panic!()
        };
        assert!(matches!(object.kind, ExprKind::Object(ref e) if e.len() == 2));
        assert_eq!(index.kind, ExprKind::Literal(Literal::String("b".into())));
    }

    #[test]
    fn truncated_function_is_a_parse_error() {
        let err = parse_program("var f = function(){ return").unwrap_err();
        assert!(err.message.contains("end of input"), "{}", err.message);
    }

    #[test]
    fn statement_level_object_literals() {
        assert!(matches!(
            expr_of("{} == {}"),
            ExprKind::Binary {
                op: BinaryOp::Eq,
                ..
            }
        ));
        assert!(matches!(expr_of("{a: 0}['a'] = 10;"), ExprKind::Assign { .. }));
        let program = parse_program("{ x = 1; }").unwrap();
        assert!(matches!(program.body[0], Stmt::Block { .. }));
    }

    #[test]
    fn newline_terminates_statements() {
        let program = parse_program("var a = 1\nvar b = 2\na\nb").unwrap();
        assert_eq!(program.body.len(), 4);
        assert!(parse_program("a b").is_err());
    }

    #[test]
    fn new_with_member_chain() {
        let ExprKind::Member { object, property } = expr_of("new Dog().__proto__;") else {
            panic!()
        };
        assert_eq!(property, "__proto__");
        assert!(matches!(object.kind, ExprKind::New { ref args, .. } if args.is_empty()));

        let ExprKind::New { callee, args } = expr_of("new a.B(1, 2);") else {
            panic!()
        };
        assert!(matches!(callee.kind, ExprKind::Member { .. }));
        assert_eq!(args.len(), 2);
    }

    #[test]
    fn precedence() {
        let ExprKind::Binary { op, right, .. } = expr_of("a || b && c == d + e * f") else {
            panic!()
        };
        assert_eq!(op, BinaryOp::Or);
        let ExprKind::Binary { op, .. } = right.kind else {
            panic!()
        };
        assert_eq!(op, BinaryOp::And);
    }

    #[test]
    fn update_operators() {
        assert!(matches!(
            expr_of("a++;"),
            ExprKind::Update {
                prefix: false,
                op: UpdateOp::Increment,
                ..
            }
        ));
        assert!(matches!(
            expr_of("--a;"),
            ExprKind::Update {
                prefix: true,
                op: UpdateOp::Decrement,
                ..
            }
        ));
        assert!(parse_program("3++;").is_err());
    }

    #[test]
    fn for_loop_and_trailing_empty_statement() {
        let program =
            parse_program("for(var i=0; i < 10; i++) {\n  handlers[i] = function() { return i; };\n};")
                .unwrap();
        assert!(matches!(program.body[0], Stmt::For { .. }));
        assert!(matches!(program.body[1], Stmt::Empty(_)));
    }

    #[test]
    fn trailing_comma_in_object_literal() {
        parse_program("var o = f(1, {\n foo: { writable: true, value: 'x' },\n});").unwrap();
    }

    #[test]
    fn assignment_target_must_be_a_reference() {
        assert!(parse_program("1 = 2;").is_err());
    }

    #[test]
    fn return_requires_a_function() {
        assert!(parse_program("return 1;").is_err());
        parse_program("function f() { if (a) { return; } return 2; }").unwrap();
    }

    #[test]
    fn nesting_is_bounded() {
        let deep = format!("{}1{};", "(".repeat(5000), ")".repeat(5000));
        let err = parse_program(&deep).unwrap_err();
        assert!(err.message.contains("nested too deeply"));
        let long_sum = format!("{}1;", "1 + ".repeat(5000));
        assert!(parse_program(&long_sum).is_err());
        let fine = format!("{}1{};", "(".repeat(100), ")".repeat(100));
        assert!(parse_program(&fine).is_ok());
    }

    #[test]
    fn undefined_is_a_literal() {
        assert_eq!(expr_of("undefined;"), ExprKind::Literal(Literal::Undefined));
        assert!(parse_program("var undefined = 1;").is_err());
    }
}
