//! Declaration hoisting: `var` names and function declarations are bound on
//! entry to their enclosing function or program, before any statement runs.

use crate::syntax::ast::{ForInit, FunctionDef, Hoisted, Stmt, VarDecl};

/// Collects every `var` name (nested blocks and loops included, nested
/// function bodies excluded) and every function declaration, in source
/// order. Names are deduplicated.
pub fn hoist_declarations(body: &[Stmt]) -> Hoisted {
    let mut hoisted = Hoisted::default();
    collect(body, &mut hoisted);
    hoisted
}

/// Cached hoisting result for a function body.
pub fn hoisted_for(def: &FunctionDef) -> &Hoisted {
    def.hoisted.get_or_init(|| hoist_declarations(&def.body))
}

fn add_vars(decl: &VarDecl, out: &mut Hoisted) {
    for d in &decl.declarations {
        if !out.var_names.contains(&d.name) {
            out.var_names.push(d.name.clone());
        }
    }
}

fn collect(body: &[Stmt], out: &mut Hoisted) {
    for stmt in body {
        collect_stmt(stmt, out);
    }
}

fn collect_stmt(stmt: &Stmt, out: &mut Hoisted) {
    match stmt {
        Stmt::Var(decl) => add_vars(decl, out),
        Stmt::Function(def) => out.functions.push(def.clone()),
        Stmt::If {
            consequent,
            alternate,
            ..
        } => {
            collect_stmt(consequent, out);
            if let Some(alt) = alternate {
                collect_stmt(alt, out);
            }
        }
        Stmt::For { init, body, .. } => {
            if let Some(ForInit::Var(decl)) = init {
                add_vars(decl, out);
            }
            collect_stmt(body, out);
        }
        Stmt::While { body, .. } | Stmt::With { body, .. } => collect_stmt(body, out),
        Stmt::Block { body, .. } => collect(body, out),
        Stmt::Expression(_) | Stmt::Return { .. } | Stmt::Empty(_) => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn names(src: &str) -> (Vec<String>, Vec<String>) {
        let program = parse_program(src).unwrap();
        let h = hoist_declarations(&program.body);
        let fns = h
            .functions
            .iter()
            .map(|f| f.name.clone().unwrap())
            .collect();
        (h.var_names, fns)
    }

    #[test]
    fn collects_nested_vars_but_not_inner_functions() {
        let (vars, fns) = names(
            "if (true) { var x = 10; } for (var i = 0; i < 1; i++) { while (a) { var y; } }\n\
             with (o) { var z; }\n\
             function f() { var hidden; }\n\
             var g = function () { var alsoHidden; };",
        );
        assert_eq!(vars, ["x", "i", "y", "z", "g"]);
        assert_eq!(fns, ["f"]);
    }

    #[test]
    fn empty_body() {
        assert!(names("a = 1; f(a);").0.is_empty());
    }

    #[test]
    fn duplicate_vars_are_listed_once() {
        assert_eq!(names("var a; var a = 1; var b, a;").0, ["a", "b"]);
    }
}
