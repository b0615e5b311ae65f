// Static lint diagnostics next to what the runtime monitor saw.

use jssec::lint::monitor_global_leaks;
use jssec::{lint_source, run_source, RuleConfig};

const PROGRAM: &str = "
function Person(name) {
    this.name = name;
}
var p = Person('ann');
total = 1;
if (total == '1') {
    eval('total + 1');
}
";

pub fn run_example() -> String {
    let mut out = String::from("static:\n");
    for d in lint_source("person.js", PROGRAM, &RuleConfig::default()).expect("example parses") {
        out.push_str(&format!("  {d}\n"));
    }
    out.push_str("runtime:\n");
    let run = run_source(PROGRAM).expect("example parses");
    for d in monitor_global_leaks(&run.events) {
        out.push_str(&format!("  {}\n", d.in_file("person.js")));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
