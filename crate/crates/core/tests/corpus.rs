use std::path::Path;

use jssec::corpus::check_dir;

#[test]
fn every_corpus_file_passes() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let results = check_dir(&dir, None).unwrap();
    assert!(results.len() >= 40);
    let report: Vec<String> = results.iter().filter(|r| !r.is_pass()).map(|r| r.to_string()).collect();
    assert!(report.is_empty(), "{}", report.join("\n"));
}
