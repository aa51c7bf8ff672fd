//! Prenex normal form.
//!
//! The conversion eliminates `->` and `<->`, pushes negations down to the
//! atoms, renames every bound variable to `x1, x2, …` in left-to-right
//! order of appearance, and then pulls the quantifiers out in that same
//! order. Because the renamed variables are pairwise distinct and the
//! universe is never empty, pulling a quantifier across `&` or `|` is
//! always sound.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::Result;

use super::syntax::{Formula, Quantifier, Term};

/// A quantifier prefix (outermost first) over a quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prenex {
    pub prefix: Vec<(Quantifier, String)>,
    pub matrix: Formula,
}

impl Prenex {
    pub fn to_formula(&self) -> Formula {
        Formula::quantified(&self.prefix, self.matrix.clone())
    }
}

impl fmt::Display for Prenex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Logically equivalent prenex formula.
pub fn prenex(f: &Formula) -> Result<Formula> {
    Ok(prenex_form(f)?.to_formula())
}

/// Prenex decomposition with the prefix and matrix kept apart.
///
/// Free variables (if any) are left untouched and never reused as names
/// for bound variables.
pub fn prenex_form(f: &Formula) -> Result<Prenex> {
    let nnf = negation_normal(&eliminate_arrows(f), false);
    let mut renamer = Renamer {
        avoid: f.free_vars(),
        next: 1,
    };
    let rectified = renamer.rectify(&nnf, &HashMap::new());
    let (prefix, matrix) = pull(rectified);
    Ok(Prenex { prefix, matrix })
}

fn eliminate_arrows(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Pred(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(g) => Formula::not(eliminate_arrows(g)),
        Formula::And(gs) => Formula::And(gs.iter().map(eliminate_arrows).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(eliminate_arrows).collect()),
        Formula::Implies(a, b) => Formula::Or(vec![Formula::not(eliminate_arrows(a)), eliminate_arrows(b)]),
        Formula::Iff(a, b) => {
            let (a, b) = (eliminate_arrows(a), eliminate_arrows(b));
            Formula::And(vec![
                Formula::Or(vec![Formula::not(a.clone()), b.clone()]),
                Formula::Or(vec![a, Formula::not(b)]),
            ])
        }
        Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(eliminate_arrows(body))),
    }
}

/// Push negations to the atoms. `negate` says whether the formula sits
/// under an odd number of negations. Expects arrows already eliminated.
fn negation_normal(f: &Formula, negate: bool) -> Formula {
    match f {
        Formula::True => {
            if negate {
                Formula::False
            } else {
                Formula::True
            }
        }
        Formula::False => {
            if negate {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Pred(..) | Formula::Eq(..) => {
            if negate {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Not(g) => negation_normal(g, !negate),
        Formula::And(gs) | Formula::Or(gs) => {
            let parts = gs.iter().map(|g| negation_normal(g, negate)).collect();
            match (f, negate) {
                (Formula::And(_), false) | (Formula::Or(_), true) => Formula::And(parts),
                _ => Formula::Or(parts),
            }
        }
        Formula::Quant(q, v, body) => {
            let q = if negate { q.dual() } else { *q };
            Formula::Quant(q, v.clone(), Box::new(negation_normal(body, negate)))
        }
        Formula::Implies(..) | Formula::Iff(..) => unreachable!("arrows are eliminated first"),
    }
}

struct Renamer {
    avoid: BTreeSet<String>,
    next: usize,
}

impl Renamer {
    fn fresh(&mut self) -> String {
        loop {
            let candidate = format!("x{}", self.next);
            self.next += 1;
            if !self.avoid.contains(&candidate) {
                return candidate;
            }
        }
    }

    fn rectify(&mut self, f: &Formula, scope: &HashMap<String, String>) -> Formula {
        let rename = |t: &Term| match t {
            Term::Var(v) => Term::Var(scope.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::Name(_) => t.clone(),
        };
        match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(rename).collect()),
            Formula::Eq(a, b) => Formula::Eq(rename(a), rename(b)),
            Formula::Not(g) => Formula::not(self.rectify(g, scope)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| self.rectify(g, scope)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| self.rectify(g, scope)).collect()),
            Formula::Implies(a, b) => Formula::implies(self.rectify(a, scope), self.rectify(b, scope)),
            Formula::Iff(a, b) => Formula::iff(self.rectify(a, scope), self.rectify(b, scope)),
            Formula::Quant(q, v, body) => {
                let fresh = self.fresh();
                let mut inner = scope.clone();
                inner.insert(v.clone(), fresh.clone());
                Formula::Quant(*q, fresh, Box::new(self.rectify(body, &inner)))
            }
        }
    }
}

fn pull(f: Formula) -> (Vec<(Quantifier, String)>, Formula) {
    match f {
        Formula::Quant(q, v, body) => {
            let (mut prefix, matrix) = pull(*body);
            prefix.insert(0, (q, v));
            (prefix, matrix)
        }
        Formula::And(gs) => {
            let (prefix, parts) = pull_all(gs);
            (prefix, Formula::And(parts))
        }
        Formula::Or(gs) => {
            let (prefix, parts) = pull_all(gs);
            (prefix, Formula::Or(parts))
        }
        // In negation normal form a negation only wraps an atom.
        other => (Vec::new(), other),
    }
}

fn pull_all(parts: Vec<Formula>) -> (Vec<(Quantifier, String)>, Vec<Formula>) {
    let mut prefix = Vec::new();
    let mut matrices = Vec::with_capacity(parts.len());
    for g in parts {
        let (p, m) = pull(g);
        prefix.extend(p);
        matrices.push(m);
    }
    (prefix, matrices)
}

/// The variable names `x1 … xn`.
pub fn indexed_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
