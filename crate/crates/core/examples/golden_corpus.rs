// Check `// answers` annotations, the way `jssec test` does.

use jssec::corpus::check_source;

const FILE: &str = "
var a = [1, 2, 3];
a.length; // answers 3
a.push(4); // answers 4
a.join('-'); // answers '1-2-3-4'
var missing;
missing.field; // raises an error
";

pub fn run_example() -> String {
    check_source("arrays.js", FILE).to_string()
}

fn main() {
    println!("{}", run_example());
}
