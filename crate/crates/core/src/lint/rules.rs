//! The static rules W001-W009.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::object::PROTO_KEY;
use crate::syntax::ast::*;
use crate::syntax::{Program, SourceSpan};

use super::scope::{Resolution, ScopeId, ScopeModel};
use super::visit::{walk_body, walk_expr, walk_stmt, Visitor};
use super::{Diagnostic, RuleConfig, RuleId};

type FnId = *const FunctionDef;
type VarKey = (ScopeId, String);

fn is_capitalized(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// Which functions each variable and property name may hold, and which
/// functions are invoked without a receiver. Deliberately coarse: a
/// property binding is keyed by the property name alone.
#[derive(Default)]
struct Bindings {
    var_functions: HashMap<VarKey, Vec<Rc<FunctionDef>>>,
    prop_functions: HashMap<String, Vec<Rc<FunctionDef>>>,
    aliases: Vec<(VarKey, String)>,
    plain_call_vars: Vec<VarKey>,
    plain_called: HashSet<FnId>,
}

impl Bindings {
    fn functions_of(&self, key: &VarKey) -> &[Rc<FunctionDef>] {
        self.var_functions.get(key).map_or(&[], Vec::as_slice)
    }

    fn finish(&mut self) {
        // One round of alias propagation: `var f = obj.p`.
        for (var, prop) in std::mem::take(&mut self.aliases) {
            if let Some(fns) = self.prop_functions.get(&prop).cloned() {
                self.var_functions.entry(var).or_default().extend(fns);
            }
        }
        for key in std::mem::take(&mut self.plain_call_vars) {
            let ids: Vec<FnId> = self.functions_of(&key).iter().map(Rc::as_ptr).collect();
            self.plain_called.extend(ids);
        }
    }

    fn is_plain_called(&self, def: &Rc<FunctionDef>) -> bool {
        self.plain_called.contains(&Rc::as_ptr(def))
    }
}

/// Walks with the current scope tracked.
struct Scoped<'m> {
    model: &'m ScopeModel,
    scope: ScopeId,
    function: Option<Rc<FunctionDef>>,
}

impl Scoped<'_> {
    fn var_key(&self, name: &str) -> VarKey {
        match self.model.resolve(self.scope, name) {
            Resolution::Declared(s) => (s, name.to_string()),
            Resolution::Builtin | Resolution::Free => (ScopeId::PROGRAM, name.to_string()),
        }
    }

    fn enter(&mut self, def: &Rc<FunctionDef>) -> (ScopeId, Option<Rc<FunctionDef>>) {
        let scope = self.model.scope_of(def).expect("every function has a scope");
        (
            std::mem::replace(&mut self.scope, scope),
            self.function.replace(def.clone()),
        )
    }

    fn leave(&mut self, saved: (ScopeId, Option<Rc<FunctionDef>>)) {
        self.scope = saved.0;
        self.function = saved.1;
    }
}

struct Collector<'m> {
    at: Scoped<'m>,
    bindings: Bindings,
}

impl Collector<'_> {
    fn bind_value(&mut self, target: Target, value: &Expr) {
        match &value.kind {
            ExprKind::Function(def) => match target {
                Target::Var(key) => self.bindings.var_functions.entry(key).or_default().push(def.clone()),
                Target::Prop(p) => self.bindings.prop_functions.entry(p).or_default().push(def.clone()),
            },
            ExprKind::Member { property, .. } => {
                if let Target::Var(key) = target {
                    self.bindings.aliases.push((key, property.clone()));
                }
            }
            ExprKind::Identifier(name) => {
                // `var g = f`: g may hold whatever f holds.
                let source = self.at.var_key(name);
                let fns = self.bindings.functions_of(&source).to_vec();
                match target {
                    Target::Var(key) => self.bindings.var_functions.entry(key).or_default().extend(fns),
                    Target::Prop(p) => self.bindings.prop_functions.entry(p).or_default().extend(fns),
                }
            }
            _ => {}
        }
    }
}

enum Target {
    Var(VarKey),
    Prop(String),
}

impl Visitor for Collector<'_> {
    fn visit_function(&mut self, def: &Rc<FunctionDef>) {
        if def.is_declaration {
            if let Some(name) = &def.name {
                let key = self.at.var_key(name);
                self.bindings.var_functions.entry(key).or_default().push(def.clone());
            }
        }
        let saved = self.at.enter(def);
        walk_body(self, &def.body);
        self.at.leave(saved);
    }

    fn visit_stmt(&mut self, stmt: &Stmt) {
        let decl = match stmt {
            Stmt::Var(decl) => Some(decl),
            Stmt::For {
                init: Some(ForInit::Var(decl)),
                ..
            } => Some(decl),
            _ => None,
        };
        for d in decl.into_iter().flat_map(|d| &d.declarations) {
            if let Some(init) = &d.init {
                let key = self.at.var_key(&d.name);
                self.bind_value(Target::Var(key), init);
            }
        }
        walk_stmt(self, stmt);
    }

    fn visit_expr(&mut self, expr: &Expr) {
        match &expr.kind {
            ExprKind::Assign { target, value } => match &target.kind {
                ExprKind::Identifier(name) => {
                    let key = self.at.var_key(name);
                    self.bind_value(Target::Var(key), value);
                }
                ExprKind::Member { property, .. } => {
                    self.bind_value(Target::Prop(property.clone()), value);
                }
                _ => {}
            },
            ExprKind::Object(entries) => {
                for entry in entries {
                    self.bind_value(Target::Prop(entry.key.clone()), &entry.value);
                }
            }
            ExprKind::Call { callee, .. } => match &callee.kind {
                ExprKind::Identifier(name) => {
                    let key = self.at.var_key(name);
                    self.bindings.plain_call_vars.push(key);
                }
                ExprKind::Function(def) => {
                    self.bindings.plain_called.insert(Rc::as_ptr(def));
                }
                _ => {}
            },
            _ => {}
        }
        walk_expr(self, expr);
    }
}

struct Checker<'m> {
    at: Scoped<'m>,
    bindings: &'m Bindings,
    config: &'m RuleConfig,
    out: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn report(&mut self, rule: RuleId, span: SourceSpan, message: String) {
        if self.config.is_enabled(rule) {
            self.out.push(Diagnostic::new(rule, span, message));
        }
    }

    /// `this` here is the global object when the enclosing function is
    /// called plainly, or always at top level.
    fn this_is_global(&self) -> bool {
        match &self.at.function {
            None => true,
            Some(def) => self.bindings.is_plain_called(def),
        }
    }

    fn function_name(&self, def: &Rc<FunctionDef>) -> Option<String> {
        if let Some(name) = &def.name {
            return Some(name.clone());
        }
        let ptr = Rc::as_ptr(def);
        self.bindings
            .var_functions
            .iter()
            .filter(|(_, fns)| fns.iter().any(|f| Rc::as_ptr(f) == ptr))
            .map(|((_, name), _)| name.clone())
            .filter(|name| is_capitalized(name))
            .min()
    }

    fn check_returns(&mut self, name: &str, body: &[Stmt]) {
        struct Returns<'a>(&'a mut Vec<SourceSpan>);
        impl Visitor for Returns<'_> {
            fn visit_function(&mut self, _: &Rc<FunctionDef>) {}
            fn visit_stmt(&mut self, stmt: &Stmt) {
                if let Stmt::Return {
                    argument: Some(arg),
                    span,
                } = stmt
                {
                    if matches!(arg.kind, ExprKind::Object(_) | ExprKind::New { .. }) {
                        self.0.push(*span);
                    }
                }
                walk_stmt(self, stmt);
            }
        }
        let mut spans = Vec::new();
        walk_body(&mut Returns(&mut spans), body);
        for span in spans {
            self.report(
                RuleId::W009,
                span,
                format!("constructor '{name}' returns an object, so 'new {name}()' discards the object it built"),
            );
        }
    }
}

impl Visitor for Checker<'_> {
    fn visit_function(&mut self, def: &Rc<FunctionDef>) {
        if let Some(name) = self.function_name(def).filter(|n| is_capitalized(n)) {
            self.check_returns(&name, &def.body);
        }
        let saved = self.at.enter(def);
        walk_body(self, &def.body);
        self.at.leave(saved);
    }

    fn visit_stmt(&mut self, stmt: &Stmt) {
        match stmt {
            Stmt::With { span, .. } => self.report(
                RuleId::W002,
                *span,
                "'with' makes name resolution depend on the run-time contents of an object".into(),
            ),
            Stmt::Var(decl)
            | Stmt::For {
                init: Some(ForInit::Var(decl)),
                ..
            } => {
                for d in &decl.declarations {
                    let Some(Expr {
                        kind: ExprKind::Identifier(init),
                        ..
                    }) = &d.init
                    else {
                        continue;
                    };
                    if *init != d.name {
                        continue;
                    }
                    let scope = self.at.model.scope(self.at.scope);
                    let shadows = scope.params.contains(&d.name)
                        || scope
                            .parent
                            .is_some_and(|p| self.at.model.resolve(p, &d.name) != Resolution::Free);
                    if shadows {
                        self.report(
                            RuleId::W007,
                            d.span,
                            format!(
                                "'var {0} = {0}' reads the new local '{0}', which is still undefined, not the outer '{0}'",
                                d.name
                            ),
                        );
                    }
                }
            }
            _ => {}
        }
        walk_stmt(self, stmt);
    }

    fn visit_expr(&mut self, expr: &Expr) {
        match &expr.kind {
            ExprKind::Assign { target, .. } => match &target.kind {
                ExprKind::Identifier(name) => {
                    if self.at.model.resolve(self.at.scope, name) == Resolution::Free {
                        self.report(
                            RuleId::W001,
                            expr.span,
                            format!("assignment to undeclared '{name}' creates a global variable"),
                        );
                    }
                }
                ExprKind::Member { object, .. } | ExprKind::Index { object, .. }
                    if matches!(object.kind, ExprKind::This) && self.at.function.is_some() && self.this_is_global() =>
                {
                    let what = match &target.kind {
                        ExprKind::Member { property, .. } => format!("'{property}'"),
                        _ => "a property".into(),
                    };
                    self.report(
                        RuleId::W001,
                        expr.span,
                        format!("assignment through 'this' in a function called without a receiver creates global {what}"),
                    );
                }
                _ => {}
            },
            ExprKind::This => {
                if self.at.function.is_none() {
                    self.report(
                        RuleId::W004,
                        expr.span,
                        "'this' at top level is the global object".into(),
                    );
                } else if self.this_is_global() {
                    self.report(
                        RuleId::W004,
                        expr.span,
                        "'this' is the global object when this function is called without a receiver".into(),
                    );
                }
            }
            ExprKind::Binary {
                op: op @ (BinaryOp::Eq | BinaryOp::NotEq),
                ..
            } => {
                let strict = if *op == BinaryOp::Eq { "===" } else { "!==" };
                self.report(
                    RuleId::W005,
                    expr.span,
                    format!("'{}' converts operand types before comparing; use '{strict}'", op.symbol()),
                );
            }
            ExprKind::Call { callee, .. } => {
                let is_eval = match &callee.kind {
                    ExprKind::Identifier(name) => name == "eval",
                    ExprKind::Member { object, property } => {
                        property == "eval" && matches!(&object.kind, ExprKind::Identifier(w) if w == "window")
                    }
                    _ => false,
                };
                if is_eval {
                    self.report(
                        RuleId::W006,
                        expr.span,
                        "eval runs code built at run time and defeats static analysis".into(),
                    );
                }
                if let ExprKind::Identifier(name) = &callee.kind {
                    let key = self.at.var_key(name);
                    if is_capitalized(name) && !self.bindings.functions_of(&key).is_empty() {
                        self.report(
                            RuleId::W003,
                            expr.span,
                            format!("constructor '{name}' called without 'new'; 'this' inside it will be the global object"),
                        );
                    }
                }
            }
            ExprKind::Member { property, .. } if property == PROTO_KEY => {
                self.report(
                    RuleId::W008,
                    expr.span,
                    "'__proto__' is non-standard; use Object.create to set up prototypes".into(),
                );
            }
            ExprKind::Index { index, .. }
                if matches!(&index.kind, ExprKind::Literal(Literal::String(s)) if &**s == PROTO_KEY) =>
            {
                self.report(
                    RuleId::W008,
                    expr.span,
                    "'__proto__' is non-standard; use Object.create to set up prototypes".into(),
                );
            }
            _ => {}
        }
        walk_expr(self, expr);
    }
}

/// Runs every enabled rule. Output is sorted by position then rule.
pub fn lint_program(program: &Program, model: &ScopeModel, config: &RuleConfig) -> Vec<Diagnostic> {
    let mut collector = Collector {
        at: Scoped {
            model,
            scope: ScopeId::PROGRAM,
            function: None,
        },
        bindings: Bindings::default(),
    };
    walk_body(&mut collector, &program.body);
    let mut bindings = collector.bindings;
    bindings.finish();

    let mut checker = Checker {
        at: Scoped {
            model,
            scope: ScopeId::PROGRAM,
            function: None,
        },
        bindings: &bindings,
        config,
        out: Vec::new(),
    };
    walk_body(&mut checker, &program.body);
    let mut out = checker.out;
    super::sort_diagnostics(&mut out);
    out.dedup();
    out
}
