//! Arbitrary-precision counting primitives.
//!
//! Counts are [`BigInt`]s and ratios are [`BigRational`]s, which are always
//! kept in lowest terms with a positive denominator. The only floating-point
//! output is the logarithm, which is taken from the exact value without ever
//! materializing the value itself as an `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact, signed, unbounded integer count.
pub type ExactInt = BigInt;

/// An exact rational in lowest terms.
pub type ExactRational = BigRational;

/// `n!`
pub fn factorial(n: u64) -> ExactInt {
    // Accumulate in a machine word and spill into the big integer only on
    // overflow; this keeps 10^4! and beyond cheap.
    let mut acc = BigInt::one();
    let mut word: u64 = 1;
    for i in 2..=n {
        match word.checked_mul(i) {
            Some(w) => word = w,
            None => {
                acc *= word;
                word = i;
            }
        }
    }
    acc * word
}

/// `n` choose `k`, defined as zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc holds binomial(n, i) here, so the division is exact.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(Σ parts)! / Π parts_i!`. The empty list gives the empty product, 1.
pub fn multinomial(parts: &[u64]) -> ExactInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &part in parts {
        total += part;
        acc *= binomial(total, part);
    }
    acc
}

/// `base^exp` as an exact integer (`0^0 = 1`).
pub fn power(base: u64, exp: u64) -> ExactInt {
    Pow::pow(BigInt::from(base), exp)
}

/// `base^exp` for an exact rational base.
pub fn rational_power(base: &ExactRational, exp: u64) -> ExactRational {
    let numer: BigInt = Pow::pow(base.numer().clone(), exp);
    let denom: BigInt = Pow::pow(base.denom().clone(), exp);
    BigRational::new(numer, denom)
}

/// Natural logarithm of a positive exact rational, to double precision.
pub fn ln_exact(q: &ExactRational) -> Result<f64> {
    if !q.is_positive() {
        return Err(Error::NonPositiveLogarithm);
    }
    ln_ratio(q.numer(), q.denom())
}

/// Natural logarithm of a positive exact integer.
pub fn ln_int(n: &ExactInt) -> Result<f64> {
    ln_ratio(n, &BigInt::one())
}

/// `ln(numer / denom)` for positive integers, without forming the reduced
/// fraction. Useful when both sides are huge and a gcd would be wasted work.
pub fn ln_ratio(numer: &ExactInt, denom: &ExactInt) -> Result<f64> {
    if !numer.is_positive() || !denom.is_positive() {
        return Err(Error::NonPositiveLogarithm);
    }
    const DIRECT_BITS: u64 = 1000;
    if numer.bits() <= DIRECT_BITS && denom.bits() <= DIRECT_BITS {
        let n = numer.to_f64().expect("fits in f64");
        let d = denom.to_f64().expect("fits in f64");
        let x = n / d;
        if (0.5..2.0).contains(&x) {
            let diff = (numer - denom).to_f64().expect("fits in f64");
            return Ok((diff / d).ln_1p());
        }
        return Ok(x.ln());
    }
    // Scale so the integer quotient carries 64 significant bits, then split
    // ln(q) = ln(mantissa) + exponent * ln 2.
    let shift = 64 + denom.bits() as i64 - numer.bits() as i64;
    let quotient = if shift >= 0 {
        (numer << shift as u64) / denom
    } else {
        numer / (denom << (-shift) as u64)
    };
    // Dividing by 2^64 is exact and leaves the mantissa in [1/2, 2), so
    // the logarithm of the mantissa itself stays small.
    let mantissa = quotient.to_f64().expect("quotient has about 64 bits") / 2f64.powi(64);
    Ok(mantissa.ln() + (64 - shift) as f64 * std::f64::consts::LN_2)
}

/// Decimal approximation of an exact rational; for display only.
pub fn to_f64(q: &ExactRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            match ln_exact(&q.abs()) {
                Ok(l) => sign * l.exp(),
                Err(_) => 0.0,
            }
        }
    }
}
