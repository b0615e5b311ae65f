// Object.create, defineProperty, preventExtensions and freeze.

use jssec::run_source;

const PROGRAM: &str = "
var proto = {greet: function () { return 'hi ' + this.name; }};
var o = Object.create(proto);
o.name = 'ann';
o.greet();
Object.defineProperty(o, 'id', {value: 7, writable: false});
o.id = 8;
o.id;
Object.preventExtensions(o);
o.extra = 1;
o.extra;
Object.freeze(o);
o.name = 'bob';
o.name;
Object.isFrozen(o);
";

pub fn run_example() -> String {
    let run = run_source(PROGRAM).expect("example parses");
    assert!(run.error().is_none());
    run.displays().iter().map(|v| format!("{v}\n")).collect()
}

fn main() {
    print!("{}", run_example());
}
