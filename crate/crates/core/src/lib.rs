//! Exact counting of particle arrangements under distinguishable,
//! reduced-classical, Bose-Einstein and Fermi-Dirac statistics, the entropy
//! bookkeeping that follows from those counts, and a first-order logic
//! engine that rewrites a sentence with a fixed finite cardinality into an
//! existentially closed, totally symmetric predicate.
//!
//! Every count, volume and probability is an exact integer or rational.
//! Floating point appears only where a logarithm is taken.

pub mod ensembles;
pub mod error;
pub mod exactnum;
pub mod folsym;
pub mod occupancy;
pub mod thermo;

pub use ensembles::{
    coincidence_probability, distribution, hilbert_dimensions, stable_label_reduction,
    HilbertDimensions, LabelReduction, LabeledSystem, OccupationDistribution,
};
pub use error::{Error, Result};
pub use exactnum::{binomial, factorial, ln_exact, ln_int, multinomial, ExactInt, ExactRational};
pub use occupancy::{
    arrangement_weight, count_arrangements, count_w_d, count_w_i, enumerate_macrostates,
    enumerate_occupations, limit_ratio, reduced_volume, reduced_volume_constrained, CellUnit,
    Level, LevelSpec, MacrostateConstraint, OccupationVector, StatisticsKind,
};
pub use thermo::{EntropyReport, GasSample, SpeciesTag};
