// Evaluate a program and print the value of each top-level statement.

use jssec::run_source;

const PROGRAM: &str = "
var counter = {count: 0, inc: function () { this.count = this.count + 1; return this.count; }};
counter.inc();
counter.inc();
counter;
";

pub fn run_example() -> String {
    let run = run_source(PROGRAM).expect("example parses");
    let mut out = String::new();
    for entry in &run.trace {
        out.push_str(&format!("{}: {}\n", entry.span, entry.display));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
