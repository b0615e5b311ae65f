// How the call shape decides what `this` is.

use jssec::run_source;

const PROGRAM: &str = "
var obj = {name: 'obj', who: function () { return this; }};
var other = {name: 'other'};
obj.who() === obj;
var detached = obj.who;
detached() === window;
obj.who.call(other) === other;
obj.who.apply(null, []) === window;
new obj.who() !== obj;
";

pub fn run_example() -> String {
    let run = run_source(PROGRAM).expect("example parses");
    let lines: Vec<&str> = PROGRAM.lines().filter(|l| l.ends_with(';') && !l.starts_with("var")).collect();
    lines
        .iter()
        .zip(run.displays())
        .map(|(line, value)| format!("{line:<40} {value}\n"))
        .collect()
}

fn main() {
    print!("{}", run_example());
}
