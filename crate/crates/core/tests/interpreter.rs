use jssec::{run_source, ErrorKind, RuntimeEvent, Value};

fn values(src: &str) -> Vec<String> {
    let run = run_source(src).expect("parses");
    if let Some(e) = run.error() {
        panic!("unexpected {e} at {}", e.span);
    }
    run.displays().iter().map(|s| s.to_string()).collect()
}

fn last(src: &str) -> String {
    values(src).pop().expect("at least one value")
}

fn error_kind(src: &str) -> ErrorKind {
    run_source(src).expect("parses").error().expect("raises").kind
}

#[test]
fn hoisting() {
    assert_eq!(last("f();\nfunction f() { return 1; }\nf();"), "1");
    assert_eq!(last("var r = typeof v;\nvar v = 1;\nr;"), "'undefined'");
    assert_eq!(
        last("function g() { if (false) { var x = 1; } return x; }\ng();"),
        "undefined"
    );
    assert_eq!(last("var x = 1;\nfunction h() { var x = x; return x; }\nh();"), "undefined");
}

#[test]
fn closures_share_one_binding_per_function_call() {
    let src = "var fs = [];\nfor (var i = 0; i < 3; i++) { fs.push(function () { return i; }); }\nfs[0]();";
    assert_eq!(last(src), "3");
    let src = "var fs = [];\n\
               for (var i = 0; i < 3; i++) { fs.push((function (j) { return function () { return j; }; })(i)); }\n\
               fs[0]() + fs[2]();";
    assert_eq!(last(src), "2");
}

#[test]
fn constructors() {
    assert_eq!(last("function P(n) { this.n = n; }\nnew P(3).n;"), "3");
    assert_eq!(last("function P() { this.a = 1; return {b: 2}; }\nnew P();"), "{b: 2}");
    assert_eq!(last("function P() { this.a = 1; return 5; }\nnew P();"), "{a: 1}");
    assert_eq!(
        last("function P() {}\nP.prototype.k = 'shared';\nvar a = new P(), b = new P();\na.k === b.k;"),
        "true"
    );
}

#[test]
fn calling_a_constructor_without_new_leaks_globals() {
    let run = run_source("function P(n) { this.n = n; }\nvar p = P(4);\np;\nwindow.n;").unwrap();
    assert_eq!(run.displays(), ["undefined", "4"]);
    assert!(run
        .events
        .iter()
        .any(|e| matches!(e, RuntimeEvent::GlobalCreated { name, .. } if name == "n")));
}

#[test]
fn with_statement_resolution() {
    assert_eq!(last("var o = {a: 1};\nvar a = 2;\nwith (o) { a = 3; }\na + o.a * 10;"), "32");
    assert_eq!(last("var o = {};\nwith (o) { var b = 5; }\nb;"), "5");
    assert_eq!(error_kind("with (null) { 1; }"), ErrorKind::WithOperand);
}

#[test]
fn eval_runs_in_the_callers_scope() {
    assert_eq!(last("function f() { var x = 1; eval('x = 2'); return x; }\nf();"), "2");
    assert_eq!(last("eval('var made = 7');\nmade;"), "7");
    assert_eq!(last("eval(42);"), "42");
    assert_eq!(error_kind("eval('var = ;');"), ErrorKind::Syntax);
}

#[test]
fn prototype_chain() {
    let src = "var a = {x: 1};\nvar b = Object.create(a);\nvar c = Object.create(b);\n\
               c.x;\na.x = 2;\nc.x;\nc.x = 3;\na.x;\na.isPrototypeOf(c);";
    assert_eq!(values(src), ["1", "2", "2", "3", "2", "true"]);
    assert_eq!(last("var n = Object.create(null);\nn.toString;"), "undefined");
}

#[test]
fn define_property_attributes() {
    let src = "var o = {};\nObject.defineProperty(o, 'k', {value: 1});\n\
               o.k = 2;\ndelete o.k;\no.k;\no;";
    assert_eq!(values(src).last().unwrap(), "{}");
    assert_eq!(values(src)[3], "1");
    assert_eq!(
        error_kind("var o = {};\nObject.defineProperty(o, 'k', {value: 1});\nObject.defineProperty(o, 'k', {value: 2});"),
        ErrorKind::Define
    );
    assert_eq!(error_kind("Object.defineProperty(1, 'k', {});"), ErrorKind::Type);
}

#[test]
fn getters_and_setters() {
    let src = "var o = {};\nvar seen;\n\
               Object.defineProperty(o, 'v', {get: function () { return 10; }, set: function (x) { seen = x; }});\n\
               o.v = 3;\nseen + o.v;";
    assert_eq!(last(src), "13");
}

#[test]
fn freeze_and_extensibility() {
    let src = "var o = {a: 1};\nObject.freeze(o);\no.a = 2;\no.b = 3;\ndelete o.a;\n\
               o.a;\no.b;\nObject.isFrozen(o);\nObject.isExtensible(o);";
    assert_eq!(values(src)[4..], ["1", "undefined", "true", "false"]);
    assert_eq!(last("Object.isFrozen(Object.preventExtensions({}));"), "true");
    assert_eq!(last("Object.isFrozen(Object.preventExtensions({a: 1}));"), "false");
}

#[test]
fn errors_stop_the_program() {
    let run = run_source("1;\nundefinedName;\n2;").unwrap();
    assert_eq!(run.displays(), ["1"]);
    let e = run.error().unwrap();
    assert_eq!(e.kind, ErrorKind::Reference);
    assert_eq!(e.span.line, 2);
    assert_eq!(error_kind("var o = {};\no.f();"), ErrorKind::NotCallable);
    assert_eq!(error_kind("null.x;"), ErrorKind::Type);
    assert_eq!(error_kind("function f() { f(); }\nf();"), ErrorKind::Range);
}

#[test]
fn control_flow() {
    let src = "var s = 0;\nfor (var i = 0; i < 10; i++) { if (i % 2 === 0) { s = s + i; } }\ns;";
    assert_eq!(last(src), "20");
    let src = "var n = 0;\nwhile (n < 3) n++;\nn;";
    assert_eq!(last(src), "3");
    let src = "function sign(x) { if (x < 0) return -1; else if (x === 0) return 0; return 1; }\n\
               sign(-4) + sign(0) * 10 + sign(9) * 100;";
    assert_eq!(last(src), "99");
    assert_eq!(last("var t = true && 'yes';\nvar f = 0 || 'fallback';\nt + f;"), "'yesfallback'");
}

#[test]
fn arrays() {
    assert_eq!(last("var a = [1, 2];\na[5] = 6;\na.length;"), "6");
    assert_eq!(last("var a = [1, 2, 3];\na.length = 5;\na.length;"), "5");
    assert_eq!(last("[1, [2, 3]].toString();"), "'1,2,3'");
    assert_eq!(error_kind("var a = [];\na.length = -1;"), ErrorKind::Range);
    assert_eq!(error_kind("var a = [1, 2, 3];\na.length = 1;"), ErrorKind::Range);
}

#[test]
fn global_lookup_after_run() {
    let run = run_source("var total = 2 + 3;").unwrap();
    assert!(matches!(run.global("total"), Value::Number(n) if n == 5.0));
    assert!(matches!(run.global("nothing"), Value::Undefined));
}

#[test]
fn typeof_and_operators() {
    let src = "typeof null;\ntypeof function () {};\ntypeof [];\ntypeof undeclared;\n\
               -'3';\n!'';\n7 % 3;\n1 / 0;\n'b' > 'a';\n2 < '10';";
    assert_eq!(
        values(src),
        ["'object'", "'function'", "'object'", "'undefined'", "-3", "true", "1", "Infinity", "true", "true"]
    );
}

#[test]
fn deep_nesting_is_an_error_not_a_crash() {
    let deep = format!("{}1{};", "(".repeat(5000), ")".repeat(5000));
    assert!(run_source(&deep).is_err());
    let fine = format!("{}1{};", "(".repeat(200), ")".repeat(200));
    assert_eq!(last(&fine), "1");
}
