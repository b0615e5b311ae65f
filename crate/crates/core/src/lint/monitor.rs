//! Runtime counterpart of the static rules: converts interpreter events
//! into R-diagnostics.

use std::collections::HashSet;

use crate::interp::RuntimeEvent;

use super::{sort_diagnostics, Diagnostic, RuleId};

/// One diagnostic per distinct event. `this` bound to window at top level
/// is expected and not reported.
pub fn monitor_global_leaks(events: &[RuntimeEvent]) -> Vec<Diagnostic> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for event in events {
        let diag = match event {
            RuntimeEvent::GlobalCreated { name, span } => Diagnostic::new(
                RuleId::R001,
                *span,
                format!("global '{name}' was created at run time"),
            ),
            RuntimeEvent::ThisBoundToWindow {
                span,
                in_function: true,
            } => Diagnostic::new(
                RuleId::R002,
                *span,
                "'this' was bound to the global object inside a function".into(),
            ),
            RuntimeEvent::ThisBoundToWindow { .. } => continue,
            RuntimeEvent::EvalInvoked { span } => {
                Diagnostic::new(RuleId::R003, *span, "eval was called".into())
            }
        };
        if seen.insert((diag.rule, diag.span, diag.message.clone())) {
            out.push(diag);
        }
    }
    sort_diagnostics(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::run_source;

    fn runtime_rules(src: &str) -> Vec<(RuleId, String)> {
        let run = run_source(src).unwrap();
        monitor_global_leaks(&run.events)
            .into_iter()
            .map(|d| (d.rule, d.message))
            .collect()
    }

    #[test]
    fn this_and_window_leak() {
        let src = "var obj = {x: 0, setX: function (val) { this.x = val }};\n\
                   obj.setX(10);\nvar f = obj.setX;\nf(90);\nwindow.x;";
        let found = runtime_rules(src);
        assert!(found.contains(&(RuleId::R001, "global 'x' was created at run time".into())));
        assert!(found.iter().any(|(r, _)| *r == RuleId::R002));
    }

    #[test]
    fn constructor_without_new_leaks_each_field() {
        let src = "var Person = function (name, surname, age) {\n\
                   this.name = name; this.surname = surname; this.age = age; };\n\
                   var person = Person('John', 'Foo', 27);";
        let leaked: Vec<_> = runtime_rules(src)
            .into_iter()
            .filter(|(r, _)| *r == RuleId::R001)
            .map(|(_, m)| m)
            .collect();
        assert_eq!(
            leaked,
            [
                "global 'name' was created at run time",
                "global 'surname' was created at run time",
                "global 'age' was created at run time"
            ]
        );
    }

    #[test]
    fn declared_program_is_quiet() {
        assert!(runtime_rules("var a = 1; function f(b) { var c = b; return c; } f(a);").is_empty());
    }

    #[test]
    fn repeated_events_collapse() {
        let found = runtime_rules("var i; for (i = 0; i < 3; i++) { eval('1'); }");
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, RuleId::R003);
    }
}
