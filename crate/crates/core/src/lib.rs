//! A reference interpreter and security linter for a small subset of
//! ECMAScript 3, extended with the ES5 object-protection functions
//! (`Object.create`, `defineProperty`, `preventExtensions`, `freeze`, ...).
//!
//! Most callers want [`run_source`] to execute a script and [`lint_source`]
//! to check one statically:
//!
//! ```
//! let run = jssec::run_source("var o = {f: function () { return this; }}; o.f() === o;").unwrap();
//! assert_eq!(run.trace.last().unwrap().display, "true");
//! ```

pub mod cli;
pub mod corpus;
pub mod display;
pub mod interp;
pub mod lint;
pub mod number;
pub mod object;
pub mod realm;
pub mod run;
pub mod syntax;
pub mod value;

pub use display::display_value;
pub use lint::{lint_source, Diagnostic, RuleConfig, RuleId};
pub use interp::{eval_program, Completion, ErrorKind, EvalHooks, RuntimeError, RuntimeEvent};
pub use realm::{create_realm, Realm};
pub use run::{run_program, run_source, Recorder, RunOutcome, TraceEntry};
pub use value::{ObjRef, Value};
