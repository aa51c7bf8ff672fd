//! Rewriting a sentence that only has models of one finite cardinality `N`
//! into `∃x1…∃xN G(x1,…,xN)` with `G` totally symmetric.
//!
//! The sentence is put in prenex form. Under the hypothesis that names
//! `a1…aN` enumerate the universe without repetition, each quantifier can
//! be expanded over the names, innermost first: `∀x φ` becomes the
//! conjunction of `φ[x:=ai]` and `∃x φ` the disjunction. After every
//! quantifier is expanded the result mentions only names, and it is
//! totally symmetric in them because each expansion ranges over all of
//! them. Replacing `ak` by `xk`, adding the distinctness and totality
//! clauses, and closing existentially gives the symmetric sentence.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::prenex::{indexed_variables, prenex_form, Prenex};
use super::syntax::{Formula, Quantifier, Term};

/// Largest expanded formula (in tree nodes) the construction will build.
pub const EXPANSION_LIMIT: u64 = 2_000_000;

/// Bound variable of the totality clause; never clashes with `x1…xN`.
const TOTALITY_VAR: &str = "x";

/// Output of [`symmetrize`], including the intermediate sentences of the
/// construction.
#[derive(Debug, Clone)]
pub struct Symmetrization {
    pub n: usize,
    pub prenex: Prenex,
    /// Stage `k` (0-based) is the matrix after the innermost `k + 1`
    /// quantifiers were expanded over the names.
    pub stages: Vec<Formula>,
    /// Pairwise distinctness of the names and totality over them.
    pub a: Formula,
    /// The original sentence conjoined with `a`.
    pub t1: Formula,
    /// The fully expanded, name-only formula conjoined with `a`.
    pub t2: Formula,
    /// Totally symmetric predicate over `x1…xN`, including the
    /// distinctness and totality clauses.
    pub g: Formula,
    pub t_s: Formula,
}

impl Symmetrization {
    /// The fully expanded formula over names only.
    pub fn expanded(&self) -> &Formula {
        self.stages.last().unwrap_or(&self.prenex.matrix)
    }

    /// The sentence at stage `k` (0-based): the quantifiers not yet
    /// expanded, applied to the stage's matrix.
    pub fn stage_sentence(&self, k: usize) -> Formula {
        let remaining = self.prenex.prefix.len() - (k + 1);
        Formula::quantified(&self.prenex.prefix[..remaining], self.stages[k].clone())
    }

    pub fn variables(&self) -> Vec<String> {
        indexed_variables(self.n)
    }
}

/// Pairwise distinctness of `a1…an` conjoined with `∀x (x = a1 | … | x = an)`.
pub fn build_a(n: usize) -> Result<Formula> {
    if n == 0 {
        return Err(Error::InvalidArgument("the number of names must be at least 1".into()));
    }
    Ok(cardinality_clause(&(1..=n).map(Term::Name).collect::<Vec<_>>()))
}

fn cardinality_clause(terms: &[Term]) -> Formula {
    let mut parts: Vec<Formula> = terms
        .iter()
        .tuple_combinations()
        .map(|(a, b)| Formula::neq(a.clone(), b.clone()))
        .collect();
    let x = Term::var(TOTALITY_VAR);
    parts.push(Formula::forall(
        TOTALITY_VAR,
        Formula::or(terms.iter().map(|t| Formula::eq(x.clone(), t.clone())).collect()),
    ));
    Formula::and(parts)
}

/// Disjunction of `matrix` over every permutation of its free variables
/// `x1…xn`, identity first, permutations in lexicographic order.
pub fn symmetrize_existential(matrix: &Formula, n: usize) -> Result<Formula> {
    let vars = indexed_variables(n);
    let free: Vec<String> = matrix.free_vars().into_iter().collect();
    let mut expected = vars.clone();
    expected.sort();
    if free != expected {
        return Err(Error::FreeVariableMismatch {
            expected: vars.join(", "),
            found: free.join(", "),
        });
    }
    let disjuncts = (0..n)
        .permutations(n)
        .map(|perm| {
            let map: HashMap<String, Term> = perm
                .iter()
                .enumerate()
                .map(|(i, &p)| (vars[i].clone(), Term::var(vars[p].clone())))
                .collect();
            matrix.substitute(&map)
        })
        .collect();
    Ok(Formula::or(disjuncts))
}

/// Build the symmetric predicate `G` and the sentence `∃x1…∃xN G`.
///
/// `t` must be a closed sentence without names. The construction is
/// faithful only if `t` has models of cardinality `n` alone; that
/// hypothesis is not checked here (see
/// [`satisfiable_cardinalities`](super::check::satisfiable_cardinalities)).
pub fn symmetrize(t: &Formula, n: usize) -> Result<Symmetrization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cardinality must be at least 1".into()));
    }
    let free = t.free_vars();
    if !free.is_empty() {
        return Err(Error::NotClosed(free.into_iter().join(", ")));
    }
    if !t.names().is_empty() {
        return Err(Error::ContainsNames);
    }
    let prenex = prenex_form(t)?;

    let quantifiers = prenex.prefix.len() as u32;
    let estimate = BigInt::from(n).pow(quantifiers) * prenex.matrix.size();
    if estimate > BigInt::from(EXPANSION_LIMIT) {
        return Err(Error::TooLarge {
            what: "name expansion",
            count: estimate,
            limit: EXPANSION_LIMIT,
        });
    }

    let mut stages = Vec::with_capacity(prenex.prefix.len());
    let mut current = prenex.matrix.clone();
    for (q, var) in prenex.prefix.iter().rev() {
        let instances: Vec<Formula> = (1..=n)
            .map(|k| current.substitute(&HashMap::from([(var.clone(), Term::Name(k))])))
            .collect();
        current = match q {
            Quantifier::Forall => Formula::and(instances),
            Quantifier::Exists => Formula::or(instances),
        };
        stages.push(current.clone());
    }

    let a = build_a(n)?;
    let t1 = Formula::and(vec![t.clone(), a.clone()]);
    let t2 = Formula::and(vec![current.clone(), a.clone()]);

    let vars = indexed_variables(n);
    let to_vars: BTreeMap<usize, Term> = (1..=n).map(|k| (k, Term::var(vars[k - 1].clone()))).collect();
    let g = t2.replace_names(&to_vars);
    let prefix: Vec<(Quantifier, String)> = vars.iter().map(|v| (Quantifier::Exists, v.clone())).collect();
    let t_s = Formula::quantified(&prefix, g.clone());

    Ok(Symmetrization {
        n,
        prenex,
        stages,
        a,
        t1,
        t2,
        g,
        t_s,
    })
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse, parse_document};
    use super::super::syntax::Signature;
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn a_for_small_n() {
        assert_eq!(build_a(1).unwrap().to_string(), "forall x. x = $a1");
        assert_eq!(
            build_a(2).unwrap().to_string(),
            "$a1 != $a2 & (forall x. x = $a1 | x = $a2)"
        );
        match build_a(3).unwrap() {
            Formula::And(parts) => {
                assert_eq!(parts.len(), 4);
                assert!(parts[..3].iter().all(|p| matches!(p, Formula::Not(_))));
                match &parts[3] {
                    Formula::Quant(Quantifier::Forall, _, body) => {
                        assert!(matches!(body.as_ref(), Formula::Or(d) if d.len() == 3))
                    }
                    other => panic!("{other}"),
                }
            }
            other => panic!("{other}"),
        }
        assert!(build_a(0).is_err());
    }

    #[test]
    fn existential_disjunction() {
        let f = Formula::pred("F", vec![v("x1"), v("x2")]);
        let s = symmetrize_existential(&f, 2).unwrap();
        assert_eq!(s.to_string(), "F(x1, x2) | F(x2, x1)");

        let sig = Signature::new().with("F", 3);
        let f3 = parse("F(x1, x2, x3)", &sig).unwrap();
        match symmetrize_existential(&f3, 3).unwrap() {
            Formula::Or(ds) => {
                assert_eq!(ds.len(), 6);
                assert_eq!(ds[5].to_string(), "F(x3, x2, x1)");
            }
            other => panic!("{other}"),
        }
        assert!(matches!(
            symmetrize_existential(&f, 3),
            Err(Error::FreeVariableMismatch { .. })
        ));
    }

    #[test]
    fn expansion_of_two_universals() {
        let sig = Signature::new().with("F", 2);
        let t = parse("forall x. forall y. F(x, y)", &sig).unwrap();
        let s = symmetrize(&t, 2).unwrap();
        assert_eq!(
            s.expanded().to_string(),
            "(F($a1, $a1) & F($a1, $a2)) & (F($a2, $a1) & F($a2, $a2))"
        );
        assert_eq!(s.stages.len(), 2);
        assert_eq!(s.stage_sentence(0).to_string(), "forall x1. F(x1, $a1) & F(x1, $a2)");
        assert!(s.t_s.is_closed());
        assert!(s.t_s.names().is_empty());
        assert_eq!(s.g.free_vars().len(), 2);
    }

    #[test]
    fn single_element() {
        let (t, _) = parse_document("forall x. forall y. x = y").unwrap();
        let s = symmetrize(&t, 1).unwrap();
        assert_eq!(s.t_s.to_string(), "exists x1. x1 = x1 & (forall x. x = x1)");
    }

    #[test]
    fn rejects_bad_input() {
        let (open, _) = parse_document("F(x)").unwrap();
        assert!(matches!(symmetrize(&open, 1), Err(Error::NotClosed(_))));
        let named = parse("exists x. x = $a1", &Signature::new()).unwrap();
        assert_eq!(symmetrize(&named, 1).unwrap_err(), Error::ContainsNames);
        let (t, _) = parse_document("exists x. x = x").unwrap();
        assert!(symmetrize(&t, 0).is_err());
    }

    #[test]
    fn expansion_guard() {
        let text = (0..8).map(|i| format!("forall y{i}. ")).collect::<String>() + "y0 = y7";
        let (t, _) = parse_document(&text).unwrap();
        assert!(matches!(symmetrize(&t, 8), Err(Error::TooLarge { .. })));
    }
}
