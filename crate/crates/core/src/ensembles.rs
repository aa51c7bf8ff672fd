//! Normalized distributions over occupation vectors, Hilbert-space
//! dimension counts, and the recovery of distinguishable counting from
//! stable labels.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, power, ExactInt, ExactRational};
use crate::occupancy::{
    arrangement_weight, count_arrangements, enumerate_occupations, OccupationVector, StatisticsKind,
};

/// Exact probabilities over occupation vectors, in canonical order.
/// Vectors with zero weight are kept, so the support is always the full
/// canonical list for the given cells and particles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupationDistribution {
    kind: StatisticsKind,
    entries: Vec<(OccupationVector, ExactRational)>,
}

impl OccupationDistribution {
    pub fn kind(&self) -> StatisticsKind {
        self.kind
    }

    pub fn entries(&self) -> &[(OccupationVector, ExactRational)] {
        &self.entries
    }

    pub fn probability(&self, occ: &OccupationVector) -> Option<&ExactRational> {
        self.entries.iter().find(|(v, _)| v == occ).map(|(_, p)| p)
    }

    pub fn total(&self) -> ExactRational {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

/// Probability of each occupation vector: its weight over the total weight.
pub fn distribution(cells: u64, particles: u64, kind: StatisticsKind) -> Result<OccupationDistribution> {
    // Fermi-Dirac zero-weight vectors are still listed, so enumerate the
    // unfiltered set.
    let vectors = enumerate_occupations(cells, particles, StatisticsKind::BoseEinstein)?;
    let weights: Vec<ExactRational> = vectors.iter().map(|v| arrangement_weight(v, kind)).collect();
    let total: ExactRational = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::EmptySupport);
    }
    let entries = vectors
        .into_iter()
        .zip(weights)
        .map(|(v, w)| (v, w / &total))
        .collect();
    Ok(OccupationDistribution { kind, entries })
}

/// Probability that some cell holds two or more particles.
pub fn coincidence_probability(cells: u64, particles: u64, kind: StatisticsKind) -> Result<ExactRational> {
    let dist = distribution(cells, particles, kind)?;
    Ok(dist
        .entries
        .iter()
        .filter(|(v, _)| v.max_occupancy() >= 2)
        .map(|(_, p)| p)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertDimensions {
    pub full: ExactInt,
    pub symmetric: ExactInt,
    pub antisymmetric: ExactInt,
}

impl HilbertDimensions {
    /// Dimension left over for mixed-symmetry states; zero for `N <= 2`.
    ///
    /// For `N <= 1` the symmetric and antisymmetric subspaces are both the
    /// whole space, so their span rather than their direct sum is compared.
    pub fn mixed_deficit(&self) -> ExactInt {
        if self.antisymmetric == self.full {
            return ExactInt::zero();
        }
        &self.full - &self.symmetric - &self.antisymmetric
    }
}

/// Dimensions of the `N`-fold tensor power of a `C`-dimensional space and
/// of its totally symmetric and totally antisymmetric subspaces.
pub fn hilbert_dimensions(cells: u64, particles: u64) -> HilbertDimensions {
    HilbertDimensions {
        full: power(cells, particles),
        symmetric: count_arrangements(cells, particles, StatisticsKind::BoseEinstein),
        antisymmetric: binomial(cells, particles),
    }
}

/// `labels` particles, each carrying a distinct stable property, over
/// `base_cells` phases per particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledSystem {
    base_cells: u64,
    labels: u64,
}

impl LabeledSystem {
    pub fn new(base_cells: u64, labels: u64) -> Result<Self> {
        if base_cells == 0 {
            return Err(Error::InvalidArgument("labelled system needs at least one base cell".into()));
        }
        Ok(LabeledSystem { base_cells, labels })
    }

    pub fn base_cells(&self) -> u64 {
        self.base_cells
    }

    pub fn labels(&self) -> u64 {
        self.labels
    }

    /// One particle per label.
    pub fn particles(&self) -> u64 {
        self.labels
    }

    pub fn composite_cells(&self) -> u64 {
        self.base_cells * self.labels
    }

    /// Whether an occupation vector over the composite cells (label-major:
    /// all phases of label 0, then label 1, …) puts exactly one particle on
    /// each label.
    pub fn is_accessible(&self, occ: &OccupationVector) -> bool {
        occ.cells() as u64 == self.composite_cells()
            && occ
                .counts()
                .chunks(self.base_cells as usize)
                .all(|block| block.iter().sum::<u64>() == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelReduction {
    pub composite_cells: u64,
    /// Occupation vectors over the composite cells, ignoring the labels'
    /// stability.
    pub reduced_count: ExactInt,
    /// Occupation vectors consistent with every label being carried by
    /// exactly one particle.
    pub accessible_count: ExactInt,
}

/// Reduce the permutation-symmetric count over (phase, label) cells and
/// keep only vectors compatible with stable labels; this reproduces the
/// unreduced distinguishable count `base_cells^N`.
pub fn stable_label_reduction(system: &LabeledSystem) -> LabelReduction {
    let composite_cells = system.composite_cells();
    let reduced_count = count_arrangements(composite_cells, system.particles(), StatisticsKind::BoseEinstein);
    // Each label block independently holds one particle in one of its
    // phases.
    let per_label = count_arrangements(system.base_cells(), 1, StatisticsKind::BoseEinstein);
    let accessible_count = (0..system.labels()).fold(BigInt::one(), |acc, _| acc * &per_label);
    LabelReduction {
        composite_cells,
        reduced_count,
        accessible_count,
    }
}

/// Two coins, cells ordered (heads, tails): `[2,0]` is HH, `[1,1]` HT and
/// `[0,2]` TT.
pub fn coin_distribution(kind: StatisticsKind) -> Result<Vec<(&'static str, ExactRational)>> {
    let dist = distribution(2, 2, kind)?;
    Ok(dist
        .entries()
        .iter()
        .map(|(v, p)| {
            let label = match v.counts() {
                [2, 0] => "HH",
                [1, 1] => "HT",
                _ => "TT",
            };
            (label, p.clone())
        })
        .collect())
}
