//! Occupation-number combinatorics.
//!
//! A microstate of `N` indistinguishable particles over `C` cells is an
//! [`OccupationVector`]. Distinguishable particles are counted by
//! particle-to-cell assignments instead, and each occupation vector then
//! stands for `N!/Π n_k!` of them. The multi-level functions add an energy
//! constraint over a [`LevelSpec`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, multinomial, power, rational_power, ExactInt, ExactRational};

/// Upper bound on the number of vectors or macrostates a single call may
/// enumerate.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatisticsKind {
    /// Maxwell-Boltzmann counting over labelled particles.
    Distinguishable,
    /// Maxwell-Boltzmann counting on the permutation-reduced space: the same
    /// occupation vectors as Bose-Einstein, weighted by `1/Π n_k!`.
    ReducedClassical,
    BoseEinstein,
    FermiDirac,
}

impl StatisticsKind {
    pub const ALL: [StatisticsKind; 4] = [
        StatisticsKind::Distinguishable,
        StatisticsKind::ReducedClassical,
        StatisticsKind::BoseEinstein,
        StatisticsKind::FermiDirac,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatisticsKind::Distinguishable => "distinguishable",
            StatisticsKind::ReducedClassical => "reduced-classical",
            StatisticsKind::BoseEinstein => "bose-einstein",
            StatisticsKind::FermiDirac => "fermi-dirac",
        }
    }
}

impl fmt::Display for StatisticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatisticsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "distinguishable" | "mb" | "maxwell-boltzmann" => Ok(StatisticsKind::Distinguishable),
            "reduced-classical" | "rc" | "reduced" | "classical" => Ok(StatisticsKind::ReducedClassical),
            "bose-einstein" | "be" | "bose" => Ok(StatisticsKind::BoseEinstein),
            "fermi-dirac" | "fd" | "fermi" => Ok(StatisticsKind::FermiDirac),
            other => Err(Error::InvalidArgument(format!(
                "unknown statistics `{other}` (expected distinguishable|mb, reduced-classical|rc, bose-einstein|be, fermi-dirac|fd)"
            ))),
        }
    }
}

/// Particle counts per cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationVector(Vec<u64>);

impl OccupationVector {
    pub fn new(counts: Vec<u64>) -> Self {
        OccupationVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn cells(&self) -> usize {
        self.0.len()
    }

    pub fn particles(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Largest single-cell occupancy (0 for an empty vector).
    pub fn max_occupancy(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_exclusive(&self) -> bool {
        self.0.iter().all(|&n| n <= 1)
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("]")
    }
}

impl From<Vec<u64>> for OccupationVector {
    fn from(counts: Vec<u64>) -> Self {
        OccupationVector(counts)
    }
}

/// An energy level: `degeneracy` cells sharing `energy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub energy: ExactRational,
    pub degeneracy: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSpec {
    levels: Vec<Level>,
}

impl LevelSpec {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("level list is empty".into()));
        }
        if let Some(i) = levels.iter().position(|l| l.degeneracy == 0) {
            return Err(Error::InvalidArgument(format!(
                "level {} has degeneracy 0; degeneracies must be >= 1",
                i + 1
            )));
        }
        Ok(LevelSpec { levels })
    }

    /// Convenience constructor from integer energies.
    pub fn from_integers(pairs: &[(i64, u64)]) -> Result<Self> {
        LevelSpec::new(
            pairs
                .iter()
                .map(|&(e, c)| Level {
                    energy: BigRational::from_integer(e.into()),
                    degeneracy: c,
                })
                .collect(),
        )
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn total_cells(&self) -> u64 {
        self.levels.iter().map(|l| l.degeneracy).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacrostateConstraint {
    pub n_total: u64,
    pub e_total: ExactRational,
}

impl MacrostateConstraint {
    pub fn new(n_total: u64, e_total: ExactRational) -> Self {
        MacrostateConstraint { n_total, e_total }
    }

    pub fn integer(n_total: u64, e_total: i64) -> Self {
        MacrostateConstraint::new(n_total, BigRational::from_integer(e_total.into()))
    }
}

/// Volume of one single-particle cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellUnit(ExactRational);

impl CellUnit {
    pub fn new(tau: ExactRational) -> Result<Self> {
        if !tau.is_positive() {
            return Err(Error::InvalidArgument(format!("cell volume must be positive, got {tau}")));
        }
        Ok(CellUnit(tau))
    }

    pub fn unit() -> Self {
        CellUnit(BigRational::one())
    }

    pub fn tau(&self) -> &ExactRational {
        &self.0
    }
}

impl Default for CellUnit {
    fn default() -> Self {
        CellUnit::unit()
    }
}

/// Number of distinct arrangements of `particles` over `cells`.
///
/// Distinguishable particles give `C^N`; Bose-Einstein and reduced-classical
/// give the stars-and-bars count `(N+C-1)!/(N!(C-1)!)`; Fermi-Dirac gives
/// `C choose N`, which is zero once the cells are over-filled.
pub fn count_arrangements(cells: u64, particles: u64, kind: StatisticsKind) -> ExactInt {
    match kind {
        StatisticsKind::Distinguishable => power(cells, particles),
        StatisticsKind::ReducedClassical | StatisticsKind::BoseEinstein => bose_count(cells, particles),
        StatisticsKind::FermiDirac => binomial(cells, particles),
    }
}

/// Stars and bars; with zero cells only the empty arrangement of zero
/// particles exists.
fn bose_count(cells: u64, particles: u64) -> ExactInt {
    if cells == 0 {
        return if particles == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binomial(particles + cells - 1, particles)
}

/// All occupation vectors of `particles` over `cells` admitted by `kind`,
/// in lexicographically descending order.
pub fn enumerate_occupations(
    cells: u64,
    particles: u64,
    kind: StatisticsKind,
) -> Result<Vec<OccupationVector>> {
    let count = match kind {
        StatisticsKind::FermiDirac => binomial(cells, particles),
        _ => bose_count(cells, particles),
    };
    let len = guard("occupation enumeration", &count)?;
    let cap = match kind {
        StatisticsKind::FermiDirac => 1,
        _ => particles,
    };
    let mut out = Vec::with_capacity(len);
    let mut current = Vec::with_capacity(cells as usize);
    fill_cells(cells as usize, particles, cap, &mut current, &mut out);
    debug_assert_eq!(out.len(), len);
    Ok(out)
}

fn fill_cells(cells: usize, remaining: u64, cap: u64, current: &mut Vec<u64>, out: &mut Vec<OccupationVector>) {
    let left = cells - current.len();
    if left == 0 {
        if remaining == 0 {
            out.push(OccupationVector(current.clone()));
        }
        return;
    }
    // Prune branches that cannot absorb the remaining particles.
    if remaining > cap.saturating_mul(left as u64) {
        return;
    }
    for n in (0..=remaining.min(cap)).rev() {
        current.push(n);
        fill_cells(cells, remaining - n, cap, current, out);
        current.pop();
    }
}

fn guard(what: &'static str, count: &BigInt) -> Result<usize> {
    match count.to_u64() {
        Some(n) if n <= ENUMERATION_LIMIT => Ok(n as usize),
        _ => Err(Error::TooLarge {
            what,
            count: count.clone(),
            limit: ENUMERATION_LIMIT,
        }),
    }
}

fn factorial_product(counts: &[u64]) -> ExactInt {
    counts.iter().map(|&n| factorial(n)).product()
}

/// Unnormalized statistical weight of one occupation vector.
///
/// Distinguishable: `N!/Π n_k!` (assignments it stands for). Reduced
/// classical: `1/Π n_k!` (its share of the reduced phase space, in units
/// of `τ^N`). Bose-Einstein: 1. Fermi-Dirac: 1 if no cell holds two
/// particles, else 0.
pub fn arrangement_weight(occ: &OccupationVector, kind: StatisticsKind) -> ExactRational {
    match kind {
        StatisticsKind::Distinguishable => BigRational::from_integer(multinomial(occ.counts())),
        StatisticsKind::ReducedClassical => {
            BigRational::new(BigInt::one(), factorial_product(occ.counts()))
        }
        StatisticsKind::BoseEinstein => BigRational::one(),
        StatisticsKind::FermiDirac => {
            if occ.is_exclusive() {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }
    }
}

/// Phase-space volume `(Cτ)^N / N!` left after identifying permuted points.
pub fn reduced_volume(cells: u64, particles: u64, unit: &CellUnit) -> ExactRational {
    let side = unit.tau() * BigRational::from_integer(cells.into());
    rational_power(&side, particles) / BigRational::from_integer(factorial(particles))
}

/// Ratio of the Bose-Einstein count to the reduced classical volume
/// `C^N/N!`: `Π_{i<N} (1 + i/C)`, which tends to 1 as cells outnumber
/// particles.
pub fn limit_ratio(cells: u64, particles: u64) -> Result<ExactRational> {
    if cells == 0 {
        return Err(Error::InvalidArgument("limit ratio needs at least one cell".into()));
    }
    Ok(BigRational::new(
        bose_count(cells, particles) * factorial(particles),
        power(cells, particles),
    ))
}

/// Enumerate level populations `(N_1, …, N_j)` with `Σ N_s = N_tot` and
/// `Σ N_s E_s = E_tot`, in lexicographically descending order.
pub fn enumerate_macrostates(spec: &LevelSpec, constraint: &MacrostateConstraint) -> Result<Vec<Vec<u64>>> {
    let levels = spec.levels();
    // The unpruned search space is every composition of N_tot into j parts.
    let space = bose_count(levels.len() as u64, constraint.n_total);
    guard("macrostate search", &space)?;

    // Suffix bounds on the energy a single particle can carry.
    let mut min_tail = vec![BigRational::zero(); levels.len()];
    let mut max_tail = vec![BigRational::zero(); levels.len()];
    for i in (0..levels.len()).rev() {
        let e = &levels[i].energy;
        if i + 1 == levels.len() {
            min_tail[i] = e.clone();
            max_tail[i] = e.clone();
        } else {
            min_tail[i] = e.clone().min(min_tail[i + 1].clone());
            max_tail[i] = e.clone().max(max_tail[i + 1].clone());
        }
    }

    let mut search = MacroSearch {
        levels,
        min_tail,
        max_tail,
        populations: Vec::with_capacity(levels.len()),
        out: Vec::new(),
    };
    search.descend(constraint.n_total, constraint.e_total.clone());
    Ok(search.out)
}

struct MacroSearch<'a> {
    levels: &'a [Level],
    min_tail: Vec<ExactRational>,
    max_tail: Vec<ExactRational>,
    populations: Vec<u64>,
    out: Vec<Vec<u64>>,
}

impl MacroSearch<'_> {
    fn descend(&mut self, particles: u64, energy: ExactRational) {
        let level = self.populations.len();
        if level == self.levels.len() {
            if particles == 0 && energy.is_zero() {
                self.out.push(self.populations.clone());
            }
            return;
        }
        let n = BigRational::from_integer(particles.into());
        if energy < &n * &self.min_tail[level] || energy > &n * &self.max_tail[level] {
            return;
        }
        let e = self.levels[level].energy.clone();
        for take in (0..=particles).rev() {
            let spent = &e * BigRational::from_integer(take.into());
            self.populations.push(take);
            self.descend(particles - take, &energy - spent);
            self.populations.pop();
        }
    }
}

/// Arrangements of distinguishable particles across levels:
/// `Σ N_tot!/Π N_k! · Π C_k^{N_k}` over admissible macrostates.
pub fn count_w_d(spec: &LevelSpec, constraint: &MacrostateConstraint) -> Result<ExactInt> {
    let macrostates = enumerate_macrostates(spec, constraint)?;
    Ok(macrostates
        .iter()
        .map(|pops| {
            let degeneracy: BigInt = pops
                .iter()
                .zip(spec.levels())
                .map(|(&n, l)| power(l.degeneracy, n))
                .product();
            multinomial(pops) * degeneracy
        })
        .sum())
}

/// Arrangements of indistinguishable particles across levels:
/// `Σ Π (N_k+C_k-1)!/(N_k!(C_k-1)!)` over admissible macrostates.
pub fn count_w_i(spec: &LevelSpec, constraint: &MacrostateConstraint) -> Result<ExactInt> {
    let macrostates = enumerate_macrostates(spec, constraint)?;
    Ok(macrostates
        .iter()
        .map(|pops| {
            pops.iter()
                .zip(spec.levels())
                .map(|(&n, l)| bose_count(l.degeneracy, n))
                .product::<BigInt>()
        })
        .sum())
}

/// Reduced phase-space volume on the energy shell,
/// `Σ Π (C_k τ)^{N_k}/N_k!`. Equals `W_D τ^N_tot / N_tot!` and is in
/// general not an integer, so it is never reported as a count.
pub fn reduced_volume_constrained(
    spec: &LevelSpec,
    constraint: &MacrostateConstraint,
    unit: &CellUnit,
) -> Result<ExactRational> {
    let macrostates = enumerate_macrostates(spec, constraint)?;
    let mut total = BigRational::zero();
    for pops in &macrostates {
        let mut term = BigRational::one();
        for (&n, l) in pops.iter().zip(spec.levels()) {
            let side = unit.tau() * BigRational::from_integer(l.degeneracy.into());
            term *= rational_power(&side, n) / BigRational::from_integer(factorial(n));
        }
        total += term;
    }
    Ok(total)
}
