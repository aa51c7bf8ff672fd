//! Benchmark fixtures shared by the criterion targets.

use gibbs_core::folsym::{parse_document, Formula};
use gibbs_core::{LevelSpec, MacrostateConstraint};

/// Five equally spaced levels with growing degeneracy.
pub fn ladder() -> (LevelSpec, MacrostateConstraint) {
    let spec = LevelSpec::from_integers(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).expect("valid levels");
    (spec, MacrostateConstraint::integer(12, 20))
}

pub fn exactly_two() -> Formula {
    parse_document("exists x. exists y. (x != y & forall z. (z = x | z = y))")
        .expect("fixture parses")
        .0
}

pub fn binary_pair() -> Formula {
    parse_document("(forall x. forall y. F(x, y)) & exists x. exists y. (x != y & forall z. (z = x | z = y))")
        .expect("fixture parses")
        .0
}
