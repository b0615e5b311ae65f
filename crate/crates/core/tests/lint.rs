use jssec::lint::explain_rule;
use jssec::{lint_source, RuleConfig, RuleId};

fn rules(src: &str) -> Vec<RuleId> {
    lint_source("t.js", src, &RuleConfig::default())
        .expect("parses")
        .into_iter()
        .map(|d| d.rule)
        .collect()
}

fn fires(src: &str, rule: RuleId) -> bool {
    rules(src).contains(&rule)
}

#[test]
fn w001_implicit_globals() {
    assert!(fires("function f() { leaked = 1; }", RuleId::W001));
    assert!(fires("var o = {set: function (v) { this.v = v; }};\nvar s = o.set;\ns(1);", RuleId::W001));
    assert!(!fires("var declared;\ndeclared = 1;", RuleId::W001));
    assert!(!fires("function f(p) { p = 1; var q; q = 2; }", RuleId::W001));
    assert!(!fires("function outer() { var x; function inner() { x = 1; } }", RuleId::W001));
    assert!(!fires("var o = {set: function (v) { this.v = v; }};\no.set(1);", RuleId::W001));
}

#[test]
fn w002_with() {
    assert!(fires("var o = {};\nwith (o) {}", RuleId::W002));
    assert!(!fires("var o = {};", RuleId::W002));
}

#[test]
fn w003_constructor_without_new() {
    assert!(fires("function Point(x) { this.x = x; }\nvar p = Point(1);", RuleId::W003));
    assert!(!fires("function Point(x) { this.x = x; }\nvar p = new Point(1);", RuleId::W003));
    assert!(!fires("function point(x) { return x; }\npoint(1);", RuleId::W003));
}

#[test]
fn w004_this_outside_method() {
    assert!(fires("this.x;", RuleId::W004));
    assert!(fires("function f() { return this; }\nf();", RuleId::W004));
    assert!(!fires("var o = {m: function () { return this; }};\no.m();", RuleId::W004));
}

#[test]
fn w005_loose_equality() {
    assert!(fires("1 == '1';", RuleId::W005));
    assert!(fires("1 != '1';", RuleId::W005));
    assert!(!fires("1 === 1;\n1 !== 2;", RuleId::W005));
}

#[test]
fn w006_eval() {
    assert!(fires("eval('1');", RuleId::W006));
    assert!(fires("window.eval('1');", RuleId::W006));
    assert!(!fires("var o = {evaluate: function () {}};\no.evaluate();", RuleId::W006));
}

#[test]
fn w007_self_initialising_var() {
    assert!(fires("var x = 1;\nfunction f() { var x = x; }", RuleId::W007));
    assert!(fires("function f(a) { var a = a; }", RuleId::W007));
    assert!(!fires("function f(a) { var b = a; }", RuleId::W007));
}

#[test]
fn w008_proto() {
    assert!(fires("var o = {};\no.__proto__;", RuleId::W008));
    assert!(fires("var o = {};\no['__proto__'] = null;", RuleId::W008));
    assert!(!fires("var o = {};\no.proto;", RuleId::W008));
}

#[test]
fn w009_constructor_returning_object() {
    assert!(fires("function Dog() { this.a = 1; return {b: 2}; }", RuleId::W009));
    assert!(!fires("function Dog() { this.a = 1; }", RuleId::W009));
    assert!(!fires("function make() { return {b: 2}; }", RuleId::W009));
}

#[test]
fn config_filters_rules() {
    let src = "x = 1;\nx == 1;\neval('1');";
    let only = lint_source("t.js", src, &RuleConfig::only([RuleId::W006])).unwrap();
    assert!(only.iter().all(|d| d.rule == RuleId::W006));
    let without = lint_source("t.js", src, &RuleConfig::default().without(RuleId::W005)).unwrap();
    assert!(without.iter().all(|d| d.rule != RuleId::W005));
    assert!(RuleConfig::parse_list("W001,bogus").is_err());
}

#[test]
fn diagnostics_are_sorted_with_positions() {
    let diags = lint_source("f.js", "a == 1;\nb = 2;", &RuleConfig::default()).unwrap();
    let positions: Vec<(u32, u32)> = diags.iter().map(|d| (d.span.line, d.span.column)).collect();
    let mut sorted = positions.clone();
    sorted.sort_unstable();
    assert_eq!(positions, sorted);
    assert!(diags[0].to_string().starts_with("f.js:1:1: W005"));
}

#[test]
fn every_rule_is_explained() {
    for rule in RuleId::ALL {
        assert!(!explain_rule(rule.code()).unwrap().is_empty());
    }
    assert!(explain_rule("W000").is_err());
}
