mod common;

use arrlog::coverage::{missing, reset};

#[test]
fn verify_corpus_reaches_every_operation() {
    reset();
    let r = common::arrlog(&["verify", "--corpus", "--random", "2", "--max-lines", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let names: Vec<&str> = missing().iter().map(|op| op.name()).collect();
    assert!(names.is_empty(), "not exercised: {names:?}");
}
