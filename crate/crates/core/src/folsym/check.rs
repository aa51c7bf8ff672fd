//! Bounded semantic checks: equivalence, total symmetry and the set of
//! satisfiable cardinalities, each decided by enumerating every model of
//! every universe size up to a bound. Models are visited in the canonical
//! order of [`enumerate_models`], smallest universe first, so the reported
//! counterexample is deterministic.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

use super::model::{enumerate_models, Compiled, FiniteModel};
use super::prenex::indexed_variables;
use super::syntax::{Formula, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// Agreement on every model of every size `1..=max_size`.
    Equivalent { max_size: usize, models_checked: u64 },
    /// First model (in canonical order) where the two sentences disagree.
    Counterexample { model: FiniteModel, left: bool, right: bool },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent { .. })
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceVerdict::Equivalent { max_size, models_checked } => {
                write!(f, "equivalent up to size {max_size} ({models_checked} models)")
            }
            EquivalenceVerdict::Counterexample { model, left, right } => {
                write!(f, "counterexample: {model} (left {left}, right {right})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryVerdict {
    Symmetric { max_size: usize, models_checked: u64 },
    /// `g(values)` and `g(values permuted)` differ in `model`; the permuted
    /// tuple assigns `values[permutation[i]]` to `x(i+1)`.
    Asymmetric {
        model: FiniteModel,
        values: Vec<usize>,
        permutation: Vec<usize>,
    },
}

impl SymmetryVerdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::Symmetric { .. })
    }
}

impl fmt::Display for SymmetryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryVerdict::Symmetric { max_size, models_checked } => {
                write!(f, "totally symmetric up to size {max_size} ({models_checked} models)")
            }
            SymmetryVerdict::Asymmetric {
                model,
                values,
                permutation,
            } => write!(f, "not symmetric: {model}; values {values:?} under permutation {permutation:?}"),
        }
    }
}

fn require_closed(f: &Formula) -> Result<()> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(Error::NotClosed(free.into_iter().join(", ")));
    }
    Ok(())
}

fn require_size(max_size: usize) -> Result<()> {
    if max_size == 0 {
        return Err(Error::InvalidArgument("maximum universe size must be at least 1".into()));
    }
    Ok(())
}

/// Decide `t1 ↔ t2` on all models of sizes `1..=max_size` over the union
/// of their signatures.
pub fn check_equivalence(t1: &Formula, t2: &Formula, max_size: usize) -> Result<EquivalenceVerdict> {
    require_closed(t1)?;
    require_closed(t2)?;
    require_size(max_size)?;
    let sig = Signature::of(t1).merge(&Signature::of(t2))?;
    let left = Compiled::new(t1, &[])?;
    let right = Compiled::new(t2, &[])?;
    let mut checked = 0;
    for size in 1..=max_size {
        for model in enumerate_models(&sig, size)? {
            let (l, r) = (left.eval(&model, &[])?, right.eval(&model, &[])?);
            checked += 1;
            if l != r {
                return Ok(EquivalenceVerdict::Counterexample { model, left: l, right: r });
            }
        }
    }
    Ok(EquivalenceVerdict::Equivalent {
        max_size,
        models_checked: checked,
    })
}

/// Decide whether `g(x1…xn)` is invariant under every permutation of its
/// arguments, on every model up to `max_size` and every assignment.
pub fn check_total_symmetry(g: &Formula, n: usize, max_size: usize) -> Result<SymmetryVerdict> {
    require_size(max_size)?;
    let vars = indexed_variables(n);
    let stray: Vec<String> = g.free_vars().into_iter().filter(|v| !vars.contains(v)).collect();
    if !stray.is_empty() {
        return Err(Error::FreeVariableMismatch {
            expected: vars.join(", "),
            found: g.free_vars().into_iter().join(", "),
        });
    }
    let compiled = Compiled::new(g, &vars)?;
    let sig = Signature::of(g);
    let permutations: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut checked = 0;
    for size in 1..=max_size {
        let assignments: Vec<Vec<usize>> = (0..n).map(|_| 0..size).multi_cartesian_product().collect();
        // `multi_cartesian_product` of nothing is empty; the 0-ary case has
        // exactly one (empty) assignment.
        let assignments = if n == 0 { vec![Vec::new()] } else { assignments };
        for model in enumerate_models(&sig, size)? {
            checked += 1;
            let truth: Vec<bool> = assignments
                .iter()
                .map(|a| compiled.eval(&model, a))
                .collect::<Result<_>>()?;
            for (i, values) in assignments.iter().enumerate() {
                for perm in &permutations {
                    let permuted: usize = perm.iter().fold(0, |acc, &p| acc * size + values[p]);
                    if truth[permuted] != truth[i] {
                        return Ok(SymmetryVerdict::Asymmetric {
                            model,
                            values: values.clone(),
                            permutation: perm.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(SymmetryVerdict::Symmetric {
        max_size,
        models_checked: checked,
    })
}

/// Universe sizes in `1..=max_size` at which `t` has a model.
pub fn satisfiable_cardinalities(t: &Formula, max_size: usize) -> Result<BTreeSet<usize>> {
    require_closed(t)?;
    require_size(max_size)?;
    let compiled = Compiled::new(t, &[])?;
    let sig = Signature::of(t);
    let mut sizes = BTreeSet::new();
    for size in 1..=max_size {
        for model in enumerate_models(&sig, size)? {
            if compiled.eval(&model, &[])? {
                sizes.insert(size);
                break;
            }
        }
    }
    Ok(sizes)
}
