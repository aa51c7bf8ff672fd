//! Parsers for command-line values and level files.

use std::io::Read;
use std::path::Path;

use gibbs_core::occupancy::{Level, LevelSpec, StatisticsKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::error::CliError;

/// Longest series a range argument may expand to.
pub const SERIES_LIMIT: usize = 100_000;

/// Exact rational from `p/q`, an integer, or a finite decimal such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    let bad = || format!("`{text}` is not a rational (expected p/q, an integer or a decimal)");
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("`{text}` has a zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale: BigInt = Pow::pow(BigInt::from(10u32), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = BigRational::new(whole.magnitude().clone().into(), 1.into()) + BigRational::new(frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

pub fn parse_statistics(text: &str) -> Result<StatisticsKind, String> {
    text.parse().map_err(|e: gibbs_core::Error| e.to_string())
}

/// Parsed form of a series argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series(pub Vec<u64>);

pub fn parse_series_arg(text: &str) -> Result<Series, String> {
    parse_series(text).map(Series)
}

/// A list of naturals: `10,100,1000`, `1..20`, `10..1000:10`, or a mix.
/// Ranges are inclusive.
pub fn parse_series(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty item in `{text}`"));
        }
        let number = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{s}` is not a natural number"))
        };
        match item.split_once("..") {
            None => out.push(number(item)?),
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (hi, number(step)?),
                    None => (rest, 1),
                };
                let (lo, hi) = (number(lo)?, number(hi)?);
                if step == 0 {
                    return Err(format!("zero step in `{item}`"));
                }
                if lo > hi {
                    return Err(format!("empty range `{item}`"));
                }
                let len = (hi - lo) / step + 1;
                if out.len() as u64 + len > SERIES_LIMIT as u64 {
                    return Err(format!("series longer than {SERIES_LIMIT} values"));
                }
                out.extend((0..len).map(|i| lo + i * step));
            }
        }
        if out.len() > SERIES_LIMIT {
            return Err(format!("series longer than {SERIES_LIMIT} values"));
        }
    }
    Ok(out)
}

/// One level per line as `energy=<p/q> degeneracy=<int>`; `#` starts a comment.
pub fn parse_levels(text: &str, origin: &str) -> Result<LevelSpec, CliError> {
    let mut levels = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let err = |message: String| CliError::LevelFile {
            path: origin.to_string(),
            line: index + 1,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut energy = None;
        let mut degeneracy = None;
        for field in line.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, found `{field}`")))?;
            match key {
                "energy" if energy.is_none() => energy = Some(parse_rational(value).map_err(&err)?),
                "degeneracy" if degeneracy.is_none() => {
                    let d: u64 = value
                        .parse()
                        .map_err(|_| err(format!("degeneracy `{value}` is not a natural number")))?;
                    degeneracy = Some(d);
                }
                "energy" | "degeneracy" => return Err(err(format!("`{key}` given twice"))),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let energy = energy.ok_or_else(|| err("missing energy=".into()))?;
        let degeneracy = degeneracy.ok_or_else(|| err("missing degeneracy=".into()))?;
        levels.push(Level { energy, degeneracy });
    }
    LevelSpec::new(levels).map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

pub fn read_levels(path: &Path) -> Result<LevelSpec, CliError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: origin.clone(),
        source,
    })?;
    parse_levels(&text, &origin)
}

/// The argument itself, or standard input when it is `-`.
pub fn formula_text(arg: &str) -> Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).map_err(|source| CliError::Io {
        path: "<stdin>".into(),
        source,
    })?;
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("9/2").unwrap(), q(9, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }

    #[test]
    fn series() {
        assert_eq!(parse_series("10,100,1000").unwrap(), vec![10, 100, 1000]);
        assert_eq!(parse_series("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_series("10..40:10,7").unwrap(), vec![10, 20, 30, 40, 7]);
        assert!(parse_series("5..1").is_err());
        assert!(parse_series("1..5:0").is_err());
        assert!(parse_series("1,,2").is_err());
        assert!(parse_series("0..1000000").is_err());
    }

    #[test]
    fn level_files() {
        let spec = parse_levels("# two levels\nenergy=0 degeneracy=2\n\nenergy=3/2 degeneracy=1  # top\n", "t").unwrap();
        assert_eq!(spec.levels().len(), 2);
        assert_eq!(spec.levels()[1].energy, q(3, 2));
        assert_eq!(spec.total_cells(), 3);

        let err = parse_levels("energy=0 degeneracy=2\nenergy=1\n", "f.txt").unwrap_err();
        assert_eq!(err.to_string(), "f.txt:2: missing degeneracy=");
        let err = parse_levels("energy=0 degeneracy=2 colour=red\n", "f").unwrap_err();
        assert!(err.to_string().contains("unknown key `colour`"));
        let err = parse_levels("energy=a/b degeneracy=2\n", "f").unwrap_err();
        assert!(err.to_string().starts_with("f:1: "));
        assert!(parse_levels("# nothing\n", "f").is_err());
        assert!(parse_levels("energy=0 degeneracy=0\n", "f").is_err());
    }
}
