//! Lexing, parsing and expectation comments for the script subset.

pub mod ast;
pub mod expect;
pub mod lexer;
pub mod lift;
pub mod parser;
pub mod span;

pub use ast::Program;
pub use expect::{attach_expectations, extract_expectations, Expectation, ExpectationKind};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use lift::lift_var_declarations;
pub use parser::{parse_program, ParseError};
pub use span::{Position, SourceSpan};
