//! Security linter: static rules over the AST (W001-W009) and a monitor
//! that turns runtime events into diagnostics (R001-R003).

pub mod monitor;
pub mod rules;
pub mod scope;
pub mod visit;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{parse_program, ParseError, SourceSpan};

pub use monitor::monitor_global_leaks;
pub use rules::lint_program;
pub use scope::{build_scope_model, ScopeModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    W001,
    W002,
    W003,
    W004,
    W005,
    W006,
    W007,
    W008,
    W009,
    R001,
    R002,
    R003,
}

impl RuleId {
    pub const STATIC: [RuleId; 9] = [
        RuleId::W001,
        RuleId::W002,
        RuleId::W003,
        RuleId::W004,
        RuleId::W005,
        RuleId::W006,
        RuleId::W007,
        RuleId::W008,
        RuleId::W009,
    ];

    pub const ALL: [RuleId; 12] = [
        RuleId::W001,
        RuleId::W002,
        RuleId::W003,
        RuleId::W004,
        RuleId::W005,
        RuleId::W006,
        RuleId::W007,
        RuleId::W008,
        RuleId::W009,
        RuleId::R001,
        RuleId::R002,
        RuleId::R003,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RuleId::W001 => "W001",
            RuleId::W002 => "W002",
            RuleId::W003 => "W003",
            RuleId::W004 => "W004",
            RuleId::W005 => "W005",
            RuleId::W006 => "W006",
            RuleId::W007 => "W007",
            RuleId::W008 => "W008",
            RuleId::W009 => "W009",
            RuleId::R001 => "R001",
            RuleId::R002 => "R002",
            RuleId::R003 => "R003",
        }
    }

    /// Short kebab-case name.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::W001 => "implicit-global",
            RuleId::W002 => "with-statement",
            RuleId::W003 => "constructor-without-new",
            RuleId::W004 => "this-in-plain-function",
            RuleId::W005 => "loose-equality",
            RuleId::W006 => "eval",
            RuleId::W007 => "var-self-initialization",
            RuleId::W008 => "proto-access",
            RuleId::W009 => "constructor-returns-object",
            RuleId::R001 => "runtime-global-created",
            RuleId::R002 => "runtime-this-is-window",
            RuleId::R003 => "runtime-eval",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule '{0}'")]
pub struct UnknownRuleError(pub String);

impl FromStr for RuleId {
    type Err = UnknownRuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        RuleId::ALL
            .into_iter()
            .find(|r| r.code().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| UnknownRuleError(wanted.to_string()))
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: String,
    pub rule: RuleId,
    pub severity: Severity,
    pub span: SourceSpan,
    pub message: String,
}

impl Diagnostic {
    pub fn new(rule: RuleId, span: SourceSpan, message: String) -> Self {
        Diagnostic {
            file: String::new(),
            rule,
            severity: Severity::Warning,
            span,
            message,
        }
    }

    pub fn in_file(mut self, file: &str) -> Self {
        self.file = file.to_string();
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {} {}",
            self.file, self.span.line, self.span.column, self.rule, self.message
        )
    }
}

#[derive(Serialize)]
struct DiagnosticJson<'a> {
    file: &'a str,
    rule: RuleId,
    severity: Severity,
    line: u32,
    col: u32,
    #[serde(rename = "endLine")]
    end_line: u32,
    #[serde(rename = "endCol")]
    end_col: u32,
    message: &'a str,
}

impl Serialize for Diagnostic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagnosticJson {
            file: &self.file,
            rule: self.rule,
            severity: self.severity,
            line: self.span.line,
            col: self.span.column,
            end_line: self.span.end_line,
            end_col: self.span.end_column,
            message: &self.message,
        }
        .serialize(s)
    }
}

/// Orders by file, start position, then rule.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        (&a.file, a.span.start(), a.rule, a.span.end(), &a.message)
            .cmp(&(&b.file, b.span.start(), b.rule, b.span.end(), &b.message))
    });
}

/// The set of enabled rules; all of them by default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    enabled: BTreeSet<RuleId>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            enabled: RuleId::ALL.into_iter().collect(),
        }
    }
}

impl RuleConfig {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn only(rules: impl IntoIterator<Item = RuleId>) -> Self {
        RuleConfig {
            enabled: rules.into_iter().collect(),
        }
    }

    /// Parses a comma-separated list such as `W001,W005`.
    pub fn parse_list(list: &str) -> Result<Self, UnknownRuleError> {
        let rules = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<RuleId>, _>>()?;
        Ok(Self::only(rules))
    }

    pub fn without(mut self, rule: RuleId) -> Self {
        self.enabled.remove(&rule);
        self
    }

    pub fn is_enabled(&self, rule: RuleId) -> bool {
        self.enabled.contains(&rule)
    }
}

/// Parses and lints one source file.
pub fn lint_source(file: &str, source: &str, config: &RuleConfig) -> Result<Vec<Diagnostic>, ParseError> {
    let program = parse_program(source)?;
    let model = build_scope_model(&program);
    Ok(lint_program(&program, &model, config)
        .into_iter()
        .map(|d| d.in_file(file))
        .collect())
}

/// Description of a rule and the hazard it guards against.
pub fn explain_rule(id: &str) -> Result<&'static str, UnknownRuleError> {
    let rule: RuleId = id.parse()?;
    Ok(match rule {
        RuleId::W001 => {
            "W001 implicit-global: assigning to a name that no enclosing function declares with \
             'var' creates a property of the global object, visible to every script on the page. \
             Assignments through 'this' in functions that are called without a receiver leak the \
             same way. See: variables and scope, the global object."
        }
        RuleId::W002 => {
            "W002 with-statement: inside 'with (obj)' every name is looked up on obj first, so \
             whether an identifier means a local variable or a property depends on obj's contents \
             at run time. See: scope mixing with the with statement."
        }
        RuleId::W003 => {
            "W003 constructor-without-new: calling a capitalized constructor function without \
             'new' binds 'this' to the global object; its property writes become globals and the \
             call returns undefined. See: constructors and the new keyword."
        }
        RuleId::W004 => {
            "W004 this-in-plain-function: 'this' is chosen by the shape of the call. In a function \
             that is also called as a plain function, and at top level, it is the global object. \
             See: this binding and the window object."
        }
        RuleId::W005 => {
            "W005 loose-equality: '==' and '!=' convert their operands (false == 0, \"\" == 0, \
             objects via valueOf/toString) before comparing. '===' and '!==' do not. \
             See: type coercion and equality."
        }
        RuleId::W006 => {
            "W006 eval: eval runs a string as code in the caller's scope, so any variable may be \
             read or written by text assembled at run time. See: evaluating code from a string."
        }
        RuleId::W007 => {
            "W007 var-self-initialization: 'var x = x' is split by hoisting into 'var x;' at the \
             top of the function and 'x = x;' in place, so the right-hand side reads the new, \
             undefined local rather than the outer x. See: variable hoisting."
        }
        RuleId::W008 => {
            "W008 proto-access: '__proto__' is a non-standard accessor for an object's prototype; \
             code that relies on it is not portable. See: prototype chains."
        }
        RuleId::W009 => {
            "W009 constructor-returns-object: when a constructor returns an object, 'new' yields \
             that object and discards the one it created; constructors should not return values. \
             See: constructor return values."
        }
        RuleId::R001 => {
            "R001 runtime-global-created: the program created a property of the global object \
             without declaring it, by assigning an undeclared name or writing through 'this' \
             bound to window."
        }
        RuleId::R002 => {
            "R002 runtime-this-is-window: inside a function, 'this' evaluated to the global \
             object."
        }
        RuleId::R003 => "R003 runtime-eval: the program called eval.",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(src: &str) -> Vec<RuleId> {
        lint_source("t.js", src, &RuleConfig::default())
            .unwrap()
            .into_iter()
            .map(|d| d.rule)
            .collect()
    }

    #[test]
    fn rule_ids_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(r.code().parse::<RuleId>().unwrap(), r);
        }
        assert_eq!("W042".parse::<RuleId>(), Err(UnknownRuleError("W042".into())));
    }

    #[test]
    fn explanations() {
        assert!(explain_rule("W002").unwrap().contains("with"));
        assert!(explain_rule("W006").unwrap().contains("eval"));
        assert!(explain_rule("W042").is_err());
        for r in RuleId::ALL {
            assert!(explain_rule(r.code()).unwrap().starts_with(r.code()));
        }
    }

    #[test]
    fn global_variable_program() {
        assert_eq!(
            rules("(function () { globalVar = 'setting global'; })()\nwindow.globalVar"),
            [RuleId::W001]
        );
    }

    #[test]
    fn strict_equality_is_clean() {
        assert!(rules("a === b; var a; var b;").is_empty());
        assert_eq!(rules("var a, b; a == b; a != b;"), [RuleId::W005, RuleId::W005]);
    }

    #[test]
    fn constructor_called_as_function() {
        let src = "var Person = function (name) { this.name = name; };\nvar p = Person('John');";
        assert_eq!(
            rules(src),
            [RuleId::W001, RuleId::W004, RuleId::W003]
        );
        let with_new = "var Person = function (name) { this.name = name; };\nvar p = new Person('John');";
        assert!(rules(with_new).is_empty());
    }

    #[test]
    fn aliased_method_called_plainly() {
        let src = "var obj = {setX: function (v) { this.x = v; }};\nobj.setX(1);\nvar f = obj.setX;\nf(2);";
        assert_eq!(rules(src), [RuleId::W001, RuleId::W004]);
        let member_only = "var obj = {setX: function (v) { this.x = v; }};\nobj.setX(1);";
        assert!(rules(member_only).is_empty());
    }

    #[test]
    fn top_level_this() {
        assert_eq!(rules("this;"), [RuleId::W004]);
    }

    #[test]
    fn var_self_initialization() {
        let src = "function foo(x) { return function() { var x = x; return x; } }";
        assert_eq!(rules(src), [RuleId::W007]);
        assert!(rules("function f() { var y = y; }").is_empty());
    }

    #[test]
    fn proto_eval_with_and_constructor_return() {
        assert_eq!(rules("var o = {}; o.__proto__; o['__proto__'];"), [RuleId::W008, RuleId::W008]);
        assert_eq!(rules("var a = 1; eval('a++');"), [RuleId::W006]);
        assert_eq!(rules("var o = {}; with (o) { }"), [RuleId::W002]);
        assert_eq!(
            rules("var Dog = function () { return {name: 'tintin'}; };\nvar d = new Dog();"),
            [RuleId::W009]
        );
        assert!(rules("var dog = function () { return {}; };").is_empty());
    }

    #[test]
    fn config_filters() {
        let src = "x = 1; var a; a == 1; with (a) {}";
        let only = lint_source("t.js", src, &RuleConfig::parse_list("W005").unwrap()).unwrap();
        assert!(only.iter().all(|d| d.rule == RuleId::W005));
        assert_eq!(only.len(), 1);
        let without = lint_source("t.js", src, &RuleConfig::all().without(RuleId::W002)).unwrap();
        assert_eq!(without.iter().map(|d| d.rule).collect::<Vec<_>>(), [RuleId::W001, RuleId::W005]);
    }

    #[test]
    fn json_has_exactly_eight_keys() {
        let diags = lint_source("t.js", "x = 1;", &RuleConfig::default()).unwrap();
        let json = serde_json::to_value(&diags).unwrap();
        let obj = json[0].as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["col", "endCol", "endLine", "file", "line", "message", "rule", "severity"]);
        assert_eq!(obj["rule"], "W001");
        assert_eq!(obj["severity"], "warning");
    }
}
