//! First-order sentences over predicate symbols and equality, with no
//! constants in the input language.
//!
//! The pipeline: [`parse`] text into a [`Formula`], convert with
//! [`prenex`], rewrite with [`symmetrize`] into an existentially closed
//! totally symmetric form, and confirm the result semantically with the
//! bounded model checker in [`check`].

pub mod check;
pub mod model;
pub mod parser;
pub mod prenex;
pub mod symmetrize;
pub mod syntax;

pub use check::{
    check_equivalence, check_total_symmetry, satisfiable_cardinalities, EquivalenceVerdict, SymmetryVerdict,
};
pub use model::{enumerate_models, evaluate, model_count, Assignment, FiniteModel, MODEL_LIMIT};
pub use parser::{parse, parse_document, parse_document_with};
pub use prenex::{indexed_variables, prenex, prenex_form, Prenex};
pub use symmetrize::{build_a, symmetrize, symmetrize_existential, Symmetrization};
pub use syntax::{Formula, Quantifier, Signature, Term};
