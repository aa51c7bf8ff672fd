//! Entropy with and without the `ln N!` subtraction, in units where the
//! Boltzmann constant and the cell volume are both 1.
//!
//! Every entropy difference is evaluated as the logarithm of one exact
//! ratio of counts, so the large terms cancel before any rounding happens.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, ln_int, ln_ratio, power, ExactInt, ExactRational};

/// Opaque species identifier; samples with equal tags are mutually
/// indistinguishable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SpeciesTag(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GasSample {
    pub particles: u64,
    /// Single-particle cells; stands in for the volume.
    pub cells: u64,
    pub species: SpeciesTag,
}

impl GasSample {
    pub fn new(particles: u64, cells: u64, species: SpeciesTag) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidArgument("a gas sample needs at least one cell".into()));
        }
        Ok(GasSample { particles, cells, species })
    }

    fn count(&self, corrected: bool) -> Microstates {
        Microstates::of(self.particles, self.cells, corrected)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    /// `ln C^N`
    pub uncorrected: f64,
    /// `ln (C^N / N!)`
    pub corrected: f64,
}

/// `C^N`, optionally over `N!`, kept as a numerator/denominator pair.
struct Microstates {
    numer: ExactInt,
    denom: ExactInt,
}

impl Microstates {
    fn of(particles: u64, cells: u64, corrected: bool) -> Self {
        Microstates {
            numer: power(cells, particles),
            denom: if corrected { factorial(particles) } else { BigInt::one() },
        }
    }

    fn one() -> Self {
        Microstates {
            numer: BigInt::one(),
            denom: BigInt::one(),
        }
    }

    fn times(self, other: Microstates) -> Self {
        Microstates {
            numer: self.numer * other.numer,
            denom: self.denom * other.denom,
        }
    }

    /// `ln(self / other)`
    fn ln_over(&self, other: &Microstates) -> f64 {
        ln_ratio(&(&self.numer * &other.denom), &(&self.denom * &other.numer)).expect("counts are positive")
    }
}

pub fn entropy(sample: &GasSample, corrected: bool) -> f64 {
    sample.count(corrected).ln_over(&Microstates::one())
}

pub fn entropy_report(sample: &GasSample) -> EntropyReport {
    EntropyReport {
        uncorrected: entropy(sample, false),
        corrected: entropy(sample, true),
    }
}

/// Entropy gained by removing the partition between two samples: the
/// combined system has `C_a + C_b` cells. Same-species particles are counted
/// together; different species are counted independently over the enlarged
/// cell set.
pub fn mixing_entropy(a: &GasSample, b: &GasSample, corrected: bool) -> f64 {
    let cells = a.cells + b.cells;
    let combined = if a.species == b.species {
        Microstates::of(a.particles + b.particles, cells, corrected)
    } else {
        Microstates::of(a.particles, cells, corrected).times(Microstates::of(b.particles, cells, corrected))
    };
    let separate = a.count(corrected).times(b.count(corrected));
    combined.ln_over(&separate)
}

/// `S(mN, mC) - m S(N, C)`.
pub fn extensivity_defect(sample: &GasSample, scale: u64, corrected: bool) -> Result<f64> {
    if scale == 0 {
        return Err(Error::InvalidArgument("scale factor must be at least 1".into()));
    }
    let scaled = Microstates::of(sample.particles * scale, sample.cells * scale, corrected);
    let single = sample.count(corrected);
    let repeated = Microstates {
        numer: num_traits::Pow::pow(single.numer, scale),
        denom: num_traits::Pow::pow(single.denom, scale),
    };
    Ok(scaled.ln_over(&repeated))
}

/// `ln(atoms! / Π count_i!)`: the entropy term picked up when atoms bound in
/// molecules of several kinds are treated as permutable. The counts are not
/// checked against `atom_total`.
pub fn ehrenfest_trkal_correction(molecule_counts: &[u64], atom_total: u64) -> f64 {
    let denom: BigInt = molecule_counts.iter().map(|&n| factorial(n)).product();
    ln_ratio(&factorial(atom_total), &denom).expect("factorials are positive")
}

/// `binomial(N*, N) · N! / N*^N` for each reservoir size `N*`: the factor
/// by which choosing `N` of `N*` particles falls short of `N*^N / N!`.
pub fn grand_canonical_limit(particles: u64, reservoir_sizes: &[u64]) -> Result<Vec<ExactRational>> {
    reservoir_sizes
        .iter()
        .map(|&reservoir| {
            if reservoir < particles {
                return Err(Error::InvalidArgument(format!(
                    "reservoir size {reservoir} is smaller than the particle number {particles}"
                )));
            }
            Ok(BigRational::new(
                binomial(reservoir, particles) * factorial(particles),
                power(reservoir, particles),
            ))
        })
        .collect()
}

/// `N ln C0`: residual entropy of `N` particles in a `C0`-fold degenerate
/// ground level.
pub fn ground_state_entropy(particles: u64, ground_degeneracy: u64) -> Result<f64> {
    if ground_degeneracy == 0 {
        return Err(Error::InvalidArgument("ground degeneracy must be at least 1".into()));
    }
    Ok(particles as f64 * ln_int(&BigInt::from(ground_degeneracy))?)
}

/// Stirling's series for `ln n!`, truncated after the `1/(12n)` term.
pub fn stirling_ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let n = n as f64;
    n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n)
}
