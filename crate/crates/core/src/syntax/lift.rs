//! Explicit var lifting: rewrites every `var x = e;` into a `var x;` at the
//! top of its function (or program) plus an `x = e;` assignment in place.
//!
//! The rewritten program must behave exactly like the original; the
//! evaluator's implicit hoisting is checked against it.

use std::rc::Rc;

use super::ast::*;
use super::span::SourceSpan;
use crate::interp::hoist::hoist_declarations;

pub fn lift_var_declarations(program: &Program) -> Program {
    Program {
        body: lift_body(&program.body, program.span),
        span: program.span,
    }
}

fn lift_body(body: &[Stmt], span: SourceSpan) -> Vec<Stmt> {
    let hoisted = hoist_declarations(body);
    let mut out = Vec::with_capacity(body.len() + 1);
    if !hoisted.var_names.is_empty() {
        let at = SourceSpan::new(span.start(), span.start());
        out.push(Stmt::Var(VarDecl {
            declarations: hoisted
                .var_names
                .iter()
                .map(|name| VarDeclarator {
                    name: name.clone(),
                    name_span: at,
                    init: None,
                    span: at,
                })
                .collect(),
            span: at,
        }));
    }
    out.extend(body.iter().map(lift_stmt));
    out
}

fn assignments(decl: &VarDecl) -> Vec<Stmt> {
    decl.declarations
        .iter()
        .filter_map(|d| {
            let init = d.init.as_ref()?;
            let target = Expr {
                kind: ExprKind::Identifier(d.name.clone()),
                span: d.name_span,
            };
            Some(Stmt::Expression(ExprStmt {
                expr: Expr {
                    kind: ExprKind::Assign {
                        target: Box::new(target),
                        value: Box::new(lift_expr(init)),
                    },
                    span: d.span,
                },
                span: d.span,
                synthetic: true,
            }))
        })
        .collect()
}

fn lift_stmt(stmt: &Stmt) -> Stmt {
    match stmt {
        Stmt::Var(decl) => {
            let mut body = assignments(decl);
            match body.len() {
                0 => Stmt::Empty(decl.span),
                1 => body.remove(0),
                _ => Stmt::Block {
                    body,
                    span: decl.span,
                },
            }
        }
        Stmt::Function(def) => Stmt::Function(lift_function(def)),
        Stmt::Expression(e) => Stmt::Expression(ExprStmt {
            expr: lift_expr(&e.expr),
            ..e.clone()
        }),
        Stmt::Return { argument, span } => Stmt::Return {
            argument: argument.as_ref().map(lift_expr),
            span: *span,
        },
        Stmt::If {
            test,
            consequent,
            alternate,
            span,
        } => Stmt::If {
            test: lift_expr(test),
            consequent: Box::new(lift_stmt(consequent)),
            alternate: alternate.as_ref().map(|a| Box::new(lift_stmt(a))),
            span: *span,
        },
        Stmt::For {
            init,
            test,
            update,
            body,
            span,
        } => {
            let (pre, init) = match init {
                Some(ForInit::Var(decl)) => (assignments(decl), None),
                Some(ForInit::Expr(e)) => (Vec::new(), Some(ForInit::Expr(lift_expr(e)))),
                None => (Vec::new(), None),
            };
            let for_stmt = Stmt::For {
                init,
                test: test.as_ref().map(lift_expr),
                update: update.as_ref().map(lift_expr),
                body: Box::new(lift_stmt(body)),
                span: *span,
            };
            if pre.is_empty() {
                for_stmt
            } else {
                let mut body = pre;
                body.push(for_stmt);
                Stmt::Block { body, span: *span }
            }
        }
        Stmt::While { test, body, span } => Stmt::While {
            test: lift_expr(test),
            body: Box::new(lift_stmt(body)),
            span: *span,
        },
        Stmt::With { object, body, span } => Stmt::With {
            object: lift_expr(object),
            body: Box::new(lift_stmt(body)),
            span: *span,
        },
        Stmt::Block { body, span } => Stmt::Block {
            body: body.iter().map(lift_stmt).collect(),
            span: *span,
        },
        Stmt::Empty(span) => Stmt::Empty(*span),
    }
}

fn lift_function(def: &Rc<FunctionDef>) -> Rc<FunctionDef> {
    Rc::new(FunctionDef::new(
        def.name.clone(),
        def.params.clone(),
        lift_body(&def.body, def.span),
        def.span,
        def.is_declaration,
    ))
}

fn lift_expr(expr: &Expr) -> Expr {
    let b = |e: &Expr| Box::new(lift_expr(e));
    let kind = match &expr.kind {
        ExprKind::Identifier(_) | ExprKind::Literal(_) | ExprKind::This => expr.kind.clone(),
        ExprKind::Function(def) => ExprKind::Function(lift_function(def)),
        ExprKind::Object(entries) => ExprKind::Object(
            entries
                .iter()
                .map(|e| ObjectEntry {
                    value: lift_expr(&e.value),
                    ..e.clone()
                })
                .collect(),
        ),
        ExprKind::Array(items) => ExprKind::Array(items.iter().map(lift_expr).collect()),
        ExprKind::Member { object, property } => ExprKind::Member {
            object: b(object),
            property: property.clone(),
        },
        ExprKind::Index { object, index } => ExprKind::Index {
            object: b(object),
            index: b(index),
        },
        ExprKind::Call { callee, args } => ExprKind::Call {
            callee: b(callee),
            args: args.iter().map(lift_expr).collect(),
        },
        ExprKind::New { callee, args } => ExprKind::New {
            callee: b(callee),
            args: args.iter().map(lift_expr).collect(),
        },
        ExprKind::Assign { target, value } => ExprKind::Assign {
            target: b(target),
            value: b(value),
        },
        ExprKind::Binary { op, left, right } => ExprKind::Binary {
            op: *op,
            left: b(left),
            right: b(right),
        },
        ExprKind::Unary { op, argument } => ExprKind::Unary {
            op: *op,
            argument: b(argument),
        },
        ExprKind::Update { op, prefix, target } => ExprKind::Update {
            op: *op,
            prefix: *prefix,
            target: b(target),
        },
        ExprKind::Delete(arg) => ExprKind::Delete(b(arg)),
    };
    Expr {
        kind,
        span: expr.span,
    }
}
