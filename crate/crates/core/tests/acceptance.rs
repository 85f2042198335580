//! One line per acceptance criterion, at the stated tolerances.

use std::path::Path;

use h2xe::verify;

#[test]
fn acceptance() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let outcomes = verify::run_all(verify::seed_from_env(), Some(&golden));
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
