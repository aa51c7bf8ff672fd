use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A variable or one of the fresh name constants `a1, a2, …`.
///
/// Names live in their own namespace and print as `$a1`, so they can never
/// collide with a variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Name(usize),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Name(k) => write!(f, "$a{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

/// First-order formula over predicates and equality. Conjunction and
/// disjunction are n-ary; the empty conjunction is `true` and the empty
/// disjunction `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    pub fn neq(lhs: Term, rhs: Term) -> Self {
        Formula::not(Formula::Eq(lhs, rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction, collapsing the empty and singleton cases.
    pub fn and(mut parts: Vec<Formula>) -> Self {
        match parts.len() {
            0 => Formula::True,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Disjunction, collapsing the empty and singleton cases.
    pub fn or(mut parts: Vec<Formula>) -> Self {
        match parts.len() {
            0 => Formula::False,
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, var.into(), Box::new(body))
    }

    /// Prefix `body` with the given quantifiers, first entry outermost.
    pub fn quantified(prefix: &[(Quantifier, String)], body: Formula) -> Self {
        prefix
            .iter()
            .rev()
            .fold(body, |acc, (q, v)| Formula::Quant(*q, v.clone(), Box::new(acc)))
    }

    fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Pred(..) | Formula::Eq(..) => vec![],
            Formula::Not(f) | Formula::Quant(_, _, f) => vec![f],
            Formula::And(fs) | Formula::Or(fs) => fs.iter().collect(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => vec![a, b],
        }
    }

    fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Pred(_, args) => args.iter().collect(),
            Formula::Eq(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        for t in self.terms() {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        }
        if let Formula::Quant(_, v, body) = self {
            bound.push(v.clone());
            body.collect_free(bound, out);
            bound.pop();
            return;
        }
        for c in self.children() {
            c.collect_free(bound, out);
        }
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Quant(_, v, _) = f {
                out.insert(v.clone());
            }
            for t in f.terms() {
                if let Term::Var(v) = t {
                    out.insert(v.clone());
                }
            }
        });
        out
    }

    pub fn names(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            for t in f.terms() {
                if let Term::Name(k) = t {
                    out.insert(*k);
                }
            }
        });
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Quant(..)));
        !found
    }

    /// Predicates with the arity of their first occurrence.
    pub fn predicates(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.visit(&mut |f| {
            if let Formula::Pred(p, args) = f {
                out.entry(p.clone()).or_insert(args.len());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Simultaneous, capture-avoiding substitution of free variables.
    pub fn substitute(&self, map: &HashMap<String, Term>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        let sub = |t: &Term| match t {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Name(_) => t.clone(),
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(sub).collect()),
            Formula::Eq(a, b) => Formula::Eq(sub(a), sub(b)),
            Formula::Not(f) => Formula::not(f.substitute(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(map)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(map), b.substitute(map)),
            Formula::Quant(q, v, body) => {
                let mut inner = map.clone();
                inner.remove(v);
                let body_free = body.free_vars();
                inner.retain(|k, _| body_free.contains(k));
                let captures = inner.values().any(|t| matches!(t, Term::Var(w) if w == v));
                if captures {
                    let mut avoid = body.all_vars();
                    avoid.extend(inner.values().filter_map(|t| match t {
                        Term::Var(w) => Some(w.clone()),
                        Term::Name(_) => None,
                    }));
                    avoid.extend(inner.keys().cloned());
                    let fresh = fresh_variable(v, &avoid);
                    inner.insert(v.clone(), Term::Var(fresh.clone()));
                    Formula::Quant(*q, fresh, Box::new(body.substitute(&inner)))
                } else {
                    Formula::Quant(*q, v.clone(), Box::new(body.substitute(&inner)))
                }
            }
        }
    }

    /// Replace name constants by terms; names absent from the map stay.
    pub fn replace_names(&self, map: &BTreeMap<usize, Term>) -> Formula {
        let sub = |t: &Term| match t {
            Term::Name(k) => map.get(k).cloned().unwrap_or_else(|| t.clone()),
            Term::Var(_) => t.clone(),
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(sub).collect()),
            Formula::Eq(a, b) => Formula::Eq(sub(a), sub(b)),
            Formula::Not(f) => Formula::not(f.replace_names(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.replace_names(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.replace_names(map)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.replace_names(map), b.replace_names(map)),
            Formula::Iff(a, b) => Formula::iff(a.replace_names(map), b.replace_names(map)),
            Formula::Quant(q, v, body) => Formula::Quant(*q, v.clone(), Box::new(body.replace_names(map))),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Quant(..) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, context: u8) -> fmt::Result {
        let paren = self.precedence() < context;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Pred(p, args) => {
                f.write_str(p)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Eq(a, b) => write!(f, "{a} != {b}")?,
                other => {
                    f.write_str("~")?;
                    other.write_prec(f, 5)?;
                }
            },
            Formula::And(fs) => write_joined(f, fs, " & ", 5)?,
            Formula::Or(fs) => write_joined(f, fs, " | ", 4)?,
            Formula::Implies(a, b) => {
                a.write_prec(f, 3)?;
                f.write_str(" -> ")?;
                b.write_prec(f, 2)?;
            }
            Formula::Iff(a, b) => {
                a.write_prec(f, 2)?;
                f.write_str(" <-> ")?;
                b.write_prec(f, 2)?;
            }
            Formula::Quant(q, v, body) => {
                write!(f, "{} {v}. ", q.keyword())?;
                body.write_prec(f, 0)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, parts: &[Formula], sep: &str, context: u8) -> fmt::Result {
    if parts.is_empty() {
        // Only reachable through a hand-built `And(vec![])`/`Or(vec![])`.
        return f.write_str(if sep == " & " { "true" } else { "false" });
    }
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        p.write_prec(f, context)?;
    }
    Ok(())
}

/// Renders in the concrete grammar accepted by the parser.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

/// `stem`, or `stem` followed by the smallest positive integer, avoiding
/// every name in `avoid`.
pub(crate) fn fresh_variable(stem: &str, avoid: &BTreeSet<String>) -> String {
    let base = stem.trim_end_matches(|c: char| c.is_ascii_digit());
    let base = if base.is_empty() { "v" } else { base };
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !avoid.contains(c))
        .expect("infinitely many candidates")
}

/// Predicate symbols and their arities; equality is always available.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn with(mut self, name: impl Into<String>, arity: usize) -> Self {
        self.predicates.insert(name.into(), arity);
        self
    }

    pub fn declare(&mut self, name: impl Into<String>, arity: usize) -> Result<()> {
        let name = name.into();
        if !name.starts_with(|c: char| c.is_ascii_uppercase())
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Error::InvalidArgument(format!(
                "predicate name `{name}` must start with an uppercase letter"
            )));
        }
        match self.predicates.get(&name) {
            Some(&a) if a != arity => Err(Error::InvalidArgument(format!(
                "predicate `{name}` declared with arities {a} and {arity}"
            ))),
            _ => {
                self.predicates.insert(name, arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.predicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty()
    }

    /// Union of two signatures; conflicting arities are an error.
    pub fn merge(&self, other: &Signature) -> Result<Signature> {
        let mut out = self.clone();
        for (name, arity) in other.predicates() {
            out.declare(name, arity)?;
        }
        Ok(out)
    }

    /// The predicates used by a formula.
    pub fn of(formula: &Formula) -> Signature {
        Signature {
            predicates: formula.predicates(),
        }
    }
}

/// Parses `F/2, P/1` (an optional leading `sig` keyword is allowed).
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("sig").map(str::trim_start).unwrap_or(body);
        let mut sig = Signature::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, arity) = item
                .split_once('/')
                .ok_or_else(|| Error::InvalidArgument(format!("signature entry `{item}` is not NAME/ARITY")))?;
            let arity: usize = arity
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad arity in signature entry `{item}`")))?;
            sig.declare(name.trim(), arity)?;
        }
        Ok(sig)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, arity)) in self.predicates.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}/{arity}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn free_and_bound_variables() {
        let f = Formula::exists("x", Formula::and(vec![Formula::pred("F", vec![v("x"), v("y")]), Formula::eq(v("z"), v("x"))]));
        assert_eq!(f.free_vars(), ["y", "z"].iter().map(|s| s.to_string()).collect());
        assert!(!f.is_closed());
        assert_eq!(f.all_vars().len(), 3);
    }

    #[test]
    fn substitution_avoids_capture() {
        // exists y. F(x, y) with x := y must not capture.
        let f = Formula::exists("y", Formula::pred("F", vec![v("x"), v("y")]));
        let map = HashMap::from([("x".to_string(), v("y"))]);
        let g = f.substitute(&map);
        match &g {
            Formula::Quant(_, bound, body) => {
                assert_ne!(bound, "y");
                assert_eq!(**body, Formula::pred("F", vec![v("y"), v(bound)]));
            }
            other => panic!("{other}"),
        }
        assert_eq!(g.free_vars(), ["y".to_string()].into_iter().collect());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = Formula::pred("F", vec![v("x1"), v("x2")]);
        let map = HashMap::from([("x1".to_string(), v("x2")), ("x2".to_string(), v("x1"))]);
        assert_eq!(f.substitute(&map), Formula::pred("F", vec![v("x2"), v("x1")]));
    }

    #[test]
    fn display_uses_minimal_parentheses() {
        let f = Formula::exists(
            "x",
            Formula::and(vec![
                Formula::neq(v("x"), v("y")),
                Formula::forall("z", Formula::or(vec![Formula::eq(v("z"), v("x")), Formula::eq(v("z"), v("y"))])),
            ]),
        );
        assert_eq!(f.to_string(), "exists x. x != y & (forall z. z = x | z = y)");
        let g = Formula::implies(Formula::implies(Formula::True, Formula::False), Formula::True);
        assert_eq!(g.to_string(), "(true -> false) -> true");
        assert_eq!(Formula::pred("P", vec![]).to_string(), "P");
        assert_eq!(Formula::eq(Term::Name(2), v("x")).to_string(), "$a2 = x");
    }

    #[test]
    fn signature_round_trip() {
        let sig: Signature = "sig F/2, P/1".parse().unwrap();
        assert_eq!(sig.arity("F"), Some(2));
        assert_eq!(sig.to_string(), "F/2, P/1");
        assert!("F/2, F/1".parse::<Signature>().is_err());
        assert!("f/2".parse::<Signature>().is_err());
        assert!("F".parse::<Signature>().is_err());
        assert!("".parse::<Signature>().unwrap().is_empty());
    }

    #[test]
    fn fresh_names() {
        let avoid: BTreeSet<String> = ["x1", "x2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_variable("x", &avoid), "x3");
        assert_eq!(fresh_variable("y7", &avoid), "y1");
    }
}
