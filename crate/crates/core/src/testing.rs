//! Fixtures shared by unit tests, integration tests and the CLI.

use crate::relation::BinaryRelation;
use crate::universe::Universe;

/// `R = {(a,a),(a,c),(b,c),(c,a),(c,d)}` on `U = {a,b,c,d}`.
pub fn example_relation() -> BinaryRelation {
    let u = Universe::new(["a", "b", "c", "d"])
        .expect("valid labels")
        .shared();
    BinaryRelation::from_pairs(
        u,
        [("a", "a"), ("a", "c"), ("b", "c"), ("c", "a"), ("c", "d")],
    )
    .expect("labels in universe")
}

/// Relation on `{1..n}` with the given row-major encoding.
pub fn numbered_relation(n: usize, code: u64) -> BinaryRelation {
    BinaryRelation::from_code(Universe::numbered(n).expect("n in range").shared(), code)
}
