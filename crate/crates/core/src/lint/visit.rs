//! Read-only AST traversal with overridable hooks.

use std::rc::Rc;

use crate::syntax::ast::*;

pub trait Visitor {
    fn visit_stmt(&mut self, stmt: &Stmt) {
        walk_stmt(self, stmt);
    }

    fn visit_expr(&mut self, expr: &Expr) {
        walk_expr(self, expr);
    }

    /// Called for declarations and function expressions alike.
    fn visit_function(&mut self, def: &Rc<FunctionDef>) {
        walk_body(self, &def.body);
    }
}

pub fn walk_body<V: Visitor + ?Sized>(v: &mut V, body: &[Stmt]) {
    for stmt in body {
        v.visit_stmt(stmt);
    }
}

fn walk_var<V: Visitor + ?Sized>(v: &mut V, decl: &VarDecl) {
    for d in &decl.declarations {
        if let Some(init) = &d.init {
            v.visit_expr(init);
        }
    }
}

pub fn walk_stmt<V: Visitor + ?Sized>(v: &mut V, stmt: &Stmt) {
    match stmt {
        Stmt::Var(decl) => walk_var(v, decl),
        Stmt::Function(def) => v.visit_function(def),
        Stmt::Expression(s) => v.visit_expr(&s.expr),
        Stmt::Return { argument, .. } => {
            if let Some(e) = argument {
                v.visit_expr(e);
            }
        }
        Stmt::If {
            test,
            consequent,
            alternate,
            ..
        } => {
            v.visit_expr(test);
            v.visit_stmt(consequent);
            if let Some(alt) = alternate {
                v.visit_stmt(alt);
            }
        }
        Stmt::For {
            init,
            test,
            update,
            body,
            ..
        } => {
            match init {
                Some(ForInit::Var(decl)) => walk_var(v, decl),
                Some(ForInit::Expr(e)) => v.visit_expr(e),
                None => {}
            }
            if let Some(t) = test {
                v.visit_expr(t);
            }
            if let Some(u) = update {
                v.visit_expr(u);
            }
            v.visit_stmt(body);
        }
        Stmt::While { test, body, .. } => {
            v.visit_expr(test);
            v.visit_stmt(body);
        }
        Stmt::With { object, body, .. } => {
            v.visit_expr(object);
            v.visit_stmt(body);
        }
        Stmt::Block { body, .. } => walk_body(v, body),
        Stmt::Empty(_) => {}
    }
}

pub fn walk_expr<V: Visitor + ?Sized>(v: &mut V, expr: &Expr) {
    match &expr.kind {
        ExprKind::Identifier(_) | ExprKind::Literal(_) | ExprKind::This => {}
        ExprKind::Function(def) => v.visit_function(def),
        ExprKind::Object(entries) => {
            for entry in entries {
                v.visit_expr(&entry.value);
            }
        }
        ExprKind::Array(items) => {
            for item in items {
                v.visit_expr(item);
            }
        }
        ExprKind::Member { object, .. } => v.visit_expr(object),
        ExprKind::Index { object, index } => {
            v.visit_expr(object);
            v.visit_expr(index);
        }
        ExprKind::Call { callee, args } | ExprKind::New { callee, args } => {
            v.visit_expr(callee);
            for a in args {
                v.visit_expr(a);
            }
        }
        ExprKind::Assign { target, value } => {
            v.visit_expr(target);
            v.visit_expr(value);
        }
        ExprKind::Binary { left, right, .. } => {
            v.visit_expr(left);
            v.visit_expr(right);
        }
        ExprKind::Unary { argument, .. } | ExprKind::Delete(argument) => v.visit_expr(argument),
        ExprKind::Update { target, .. } => v.visit_expr(target),
    }
}
