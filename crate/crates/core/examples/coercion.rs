// Loose equality and `+` on mixed operand types.

use jssec::run_source;

const CASES: [&str; 8] = [
    "'' == 0",
    "'0' == false",
    "null == undefined",
    "null == 0",
    "NaN == NaN",
    "1 + '2'",
    "true + 1",
    "[] + {}",
];

pub fn run_example() -> String {
    let program: String = CASES.iter().map(|c| format!("{c};\n")).collect();
    let run = run_source(&program).expect("example parses");
    CASES
        .iter()
        .zip(run.displays())
        .map(|(case, value)| format!("{case:<20} => {value}\n"))
        .collect()
}

fn main() {
    print!("{}", run_example());
}
