//! Static scope analysis: which declaration each identifier refers to.
//!
//! Uses the evaluator's hoisting rule, so a `var` anywhere in a function
//! body declares the name for the whole body.

use std::collections::HashMap;
use std::rc::Rc;

use crate::interp::hoist::hoist_declarations;
use crate::syntax::ast::*;
use crate::syntax::{Program, SourceSpan};

use super::visit::{walk_body, walk_expr, Visitor};

/// Names the realm defines on `window` before user code runs.
pub const BUILTIN_GLOBALS: &[&str] = &["window", "Object", "Array", "Function", "eval", "NaN", "Infinity"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScopeId(pub usize);

impl ScopeId {
    pub const PROGRAM: ScopeId = ScopeId(0);
}

#[derive(Debug, Clone)]
pub struct FunctionScope {
    pub parent: Option<ScopeId>,
    /// `None` for the program scope.
    pub function: Option<Rc<FunctionDef>>,
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub functions: Vec<String>,
    /// Name of a named function expression, visible inside its body.
    pub self_name: Option<String>,
    pub span: SourceSpan,
}

impl FunctionScope {
    pub fn declares(&self, name: &str) -> bool {
        let has = |names: &[String]| names.iter().any(|n| n == name);
        has(&self.params) || has(&self.vars) || has(&self.functions) || self.self_name.as_deref() == Some(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Declared(ScopeId),
    /// Predefined by the realm (`window`, `Object`, ...).
    Builtin,
    /// Not declared anywhere: a property of the global object at run time.
    Free,
}

/// How an occurrence relates to the scope it appears in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Local,
    Outer,
    Free,
}

#[derive(Debug, Clone)]
pub struct NameUse {
    pub name: String,
    pub span: SourceSpan,
    /// Scope the occurrence appears in.
    pub scope: ScopeId,
    pub resolution: Resolution,
}

impl NameUse {
    pub fn classification(&self) -> Classification {
        match self.resolution {
            Resolution::Declared(s) if s == self.scope => Classification::Local,
            Resolution::Declared(_) | Resolution::Builtin => Classification::Outer,
            Resolution::Free => Classification::Free,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScopeModel {
    pub scopes: Vec<FunctionScope>,
    /// Identifier targets of `=` and `++`/`--`.
    pub assignments: Vec<NameUse>,
    /// Identifier reads, including `var x = x` initializers.
    pub references: Vec<NameUse>,
    by_function: HashMap<*const FunctionDef, ScopeId>,
}

impl ScopeModel {
    pub fn scope(&self, id: ScopeId) -> &FunctionScope {
        &self.scopes[id.0]
    }

    /// Scope created for a function's body.
    pub fn scope_of(&self, def: &Rc<FunctionDef>) -> Option<ScopeId> {
        self.by_function.get(&Rc::as_ptr(def)).copied()
    }

    pub fn resolve(&self, from: ScopeId, name: &str) -> Resolution {
        let mut cursor = Some(from);
        while let Some(id) = cursor {
            let scope = self.scope(id);
            if scope.declares(name) {
                return Resolution::Declared(id);
            }
            cursor = scope.parent;
        }
        if BUILTIN_GLOBALS.contains(&name) {
            Resolution::Builtin
        } else {
            Resolution::Free
        }
    }

    /// Assignment targets that resolve to no declaration.
    pub fn free_assignments(&self) -> impl Iterator<Item = &NameUse> {
        self.assignments
            .iter()
            .filter(|a| a.resolution == Resolution::Free)
    }

    /// Classification of every assignment to `name`, in source order.
    pub fn classify_assignments(&self, name: &str) -> Vec<Classification> {
        self.assignments
            .iter()
            .filter(|a| a.name == name)
            .map(NameUse::classification)
            .collect()
    }
}

struct Builder {
    model: ScopeModel,
    current: ScopeId,
}

impl Builder {
    fn push_scope(&mut self, scope: FunctionScope) -> ScopeId {
        let id = ScopeId(self.model.scopes.len());
        self.model.scopes.push(scope);
        id
    }

    fn record(&mut self, name: &str, span: SourceSpan, assignment: bool) {
        let entry = NameUse {
            name: name.to_string(),
            span,
            scope: self.current,
            resolution: self.model.resolve(self.current, name),
        };
        if assignment {
            self.model.assignments.push(entry);
        } else {
            self.model.references.push(entry);
        }
    }
}

fn declared_names(body: &[Stmt]) -> (Vec<String>, Vec<String>) {
    let hoisted = hoist_declarations(body);
    let functions = hoisted
        .functions
        .iter()
        .filter_map(|f| f.name.clone())
        .collect();
    (hoisted.var_names, functions)
}

impl Visitor for Builder {
    fn visit_function(&mut self, def: &Rc<FunctionDef>) {
        let (vars, functions) = declared_names(&def.body);
        let id = self.push_scope(FunctionScope {
            parent: Some(self.current),
            function: Some(def.clone()),
            params: def.params.clone(),
            vars,
            functions,
            self_name: if def.is_declaration { None } else { def.name.clone() },
            span: def.span,
        });
        self.model.by_function.insert(Rc::as_ptr(def), id);
        let saved = std::mem::replace(&mut self.current, id);
        walk_body(self, &def.body);
        self.current = saved;
    }

    fn visit_expr(&mut self, expr: &Expr) {
        match &expr.kind {
            ExprKind::Identifier(name) => self.record(name, expr.span, false),
            ExprKind::Assign { target, value } => {
                if let ExprKind::Identifier(name) = &target.kind {
                    self.record(name, target.span, true);
                } else {
                    self.visit_expr(target);
                }
                self.visit_expr(value);
            }
            ExprKind::Update { target, .. } => {
                if let ExprKind::Identifier(name) = &target.kind {
                    self.record(name, target.span, true);
                    self.record(name, target.span, false);
                } else {
                    self.visit_expr(target);
                }
            }
            _ => walk_expr(self, expr),
        }
    }
}

/// Builds the scope tree and resolves every identifier occurrence.
pub fn build_scope_model(program: &Program) -> ScopeModel {
    let (vars, functions) = declared_names(&program.body);
    let mut builder = Builder {
        model: ScopeModel::default(),
        current: ScopeId::PROGRAM,
    };
    builder.push_scope(FunctionScope {
        parent: None,
        function: None,
        params: Vec::new(),
        vars,
        functions,
        self_name: None,
        span: program.span,
    });
    walk_body(&mut builder, &program.body);
    builder.model
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn model(src: &str) -> ScopeModel {
        build_scope_model(&parse_program(src).unwrap())
    }

    #[test]
    fn params_vars_and_free_names() {
        let m = model("function f(a){ var b; a = 0; b = 1; c = 1; }");
        assert_eq!(m.classify_assignments("a"), [Classification::Local]);
        assert_eq!(m.classify_assignments("b"), [Classification::Local]);
        assert_eq!(m.classify_assignments("c"), [Classification::Free]);
    }

    #[test]
    fn hoisting_declares_for_whole_body() {
        let m = model("function f(){ x = 1; if (true) { var x; } }");
        assert_eq!(m.classify_assignments("x"), [Classification::Local]);
    }

    #[test]
    fn outer_and_global_declarations() {
        let m = model("var g; function f(){ g = 1; function h(){ g = 2; } }");
        assert_eq!(
            m.classify_assignments("g"),
            [Classification::Outer, Classification::Outer]
        );
        let m = model("g = 1; var g;");
        assert_eq!(m.classify_assignments("g"), [Classification::Local]);
    }

    #[test]
    fn iife_assignment_is_free() {
        let m = model("(function () { globalVar = 'setting global'; })()");
        let free: Vec<_> = m.free_assignments().map(|a| a.name.as_str()).collect();
        assert_eq!(free, ["globalVar"]);
    }

    #[test]
    fn var_self_initialization_reads_the_local() {
        let m = model("function foo(x) { return function() { var x = x; return x; } }");
        let inner = m.references.iter().find(|r| r.name == "x").unwrap();
        assert_eq!(inner.classification(), Classification::Local);
        assert_eq!(inner.resolution, Resolution::Declared(ScopeId(2)));
    }

    #[test]
    fn builtins_are_not_free() {
        let m = model("Object = 1;");
        assert_eq!(m.classify_assignments("Object"), [Classification::Outer]);
    }

    #[test]
    fn named_function_expression_sees_itself() {
        let m = model("var f = function g() { g = 1; };");
        assert_eq!(m.classify_assignments("g"), [Classification::Local]);
    }
}
