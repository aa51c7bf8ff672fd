//! Finite models, Tarskian evaluation and exhaustive model enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

use super::syntax::{Formula, Quantifier, Signature, Term};

/// Most models one size of one signature may have: `2^20`.
pub const MODEL_LIMIT: u64 = 1 << 20;

/// Interpretation of one predicate as a bitmap over the tuples of the
/// universe, tuples indexed in base `universe_size`, first coordinate most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    bits: Vec<bool>,
}

impl Relation {
    fn empty(arity: usize, size: usize) -> Self {
        Relation {
            arity,
            bits: vec![false; size.pow(arity as u32)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn index(&self, size: usize, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &e| acc * size + e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    size: usize,
    relations: BTreeMap<String, Relation>,
    names: BTreeMap<usize, usize>,
}

impl FiniteModel {
    /// A model with every predicate of `sig` interpreted as empty.
    pub fn new(size: usize, sig: &Signature) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("universe must have at least one element".into()));
        }
        Ok(FiniteModel {
            size,
            relations: sig
                .predicates()
                .map(|(p, a)| (p.to_string(), Relation::empty(a, size)))
                .collect(),
            names: BTreeMap::new(),
        })
    }

    pub fn universe_size(&self) -> usize {
        self.size
    }

    /// Add `tuple` to the interpretation of `pred`.
    pub fn insert(&mut self, pred: &str, tuple: &[usize]) -> Result<()> {
        let size = self.size;
        let rel = self
            .relations
            .get_mut(pred)
            .ok_or_else(|| Error::InvalidArgument(format!("model does not interpret `{pred}`")))?;
        if tuple.len() != rel.arity || tuple.iter().any(|&e| e >= size) {
            return Err(Error::InvalidArgument(format!(
                "tuple {tuple:?} does not fit `{pred}`/{} over a universe of size {size}",
                rel.arity
            )));
        }
        let i = rel.index(size, tuple);
        rel.bits[i] = true;
        Ok(())
    }

    pub fn with(mut self, pred: &str, tuples: &[&[usize]]) -> Result<Self> {
        for t in tuples {
            self.insert(pred, t)?;
        }
        Ok(self)
    }

    pub fn holds(&self, pred: &str, tuple: &[usize]) -> Option<bool> {
        let rel = self.relations.get(pred)?;
        Some(rel.bits[rel.index(self.size, tuple)])
    }

    /// Satisfying tuples of `pred` in lexicographic order.
    pub fn tuples(&self, pred: &str) -> Vec<Vec<usize>> {
        let Some(rel) = self.relations.get(pred) else {
            return Vec::new();
        };
        (0..rel.bits.len())
            .filter(|&i| rel.bits[i])
            .map(|mut i| {
                let mut t = vec![0; rel.arity];
                for slot in t.iter_mut().rev() {
                    *slot = i % self.size;
                    i /= self.size;
                }
                t
            })
            .collect()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(k, r)| (k.as_str(), r.arity))
    }

    pub fn assign_name(&mut self, name: usize, element: usize) -> Result<()> {
        if element >= self.size {
            return Err(Error::InvalidArgument(format!(
                "element {element} outside a universe of size {}",
                self.size
            )));
        }
        self.names.insert(name, element);
        Ok(())
    }

    pub fn clear_names(&mut self) {
        self.names.clear();
    }

    pub fn name(&self, name: usize) -> Option<usize> {
        self.names.get(&name).copied()
    }
}

/// `size 2; F = {(0,1)}; $a1 -> 0`
impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size {}", self.size)?;
        for pred in self.relations.keys() {
            write!(f, "; {pred} = {{")?;
            for (i, t) in self.tuples(pred).iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if t.len() == 1 {
                    write!(f, "{}", t[0])?;
                } else {
                    let inner: Vec<String> = t.iter().map(|e| e.to_string()).collect();
                    write!(f, "({})", inner.join(","))?;
                }
            }
            f.write_str("}")?;
        }
        for (k, e) in &self.names {
            write!(f, "; $a{k} -> {e}")?;
        }
        Ok(())
    }
}

/// Values for free variables.
pub type Assignment = BTreeMap<String, usize>;

/// Truth of `formula` in `model` under `env`. Quantifiers range over the
/// whole universe and `=` is identity.
pub fn evaluate(model: &FiniteModel, formula: &Formula, env: &Assignment) -> Result<bool> {
    let free: Vec<String> = env.keys().cloned().collect();
    let compiled = Compiled::new(formula, &free)?;
    let values: Vec<usize> = env.values().copied().collect();
    if let Some(&bad) = values.iter().find(|&&v| v >= model.size) {
        return Err(Error::InvalidArgument(format!(
            "assigned element {bad} outside a universe of size {}",
            model.size
        )));
    }
    compiled.eval(model, &values)
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Var(usize),
    Name(usize),
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Atom(usize, Vec<Slot>),
    Eq(Slot, Slot),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(Box<Node>),
    Exists(Box<Node>),
}

/// A formula with variables resolved to stack slots and predicates to
/// indices, for repeated evaluation over many models.
#[derive(Debug, Clone)]
pub struct Compiled {
    root: Node,
    predicates: Vec<(String, usize)>,
    names: Vec<usize>,
    free: usize,
}

impl Compiled {
    /// `free` lists the free variables in the order their values will be
    /// supplied; any other free variable is an error.
    pub fn new(formula: &Formula, free: &[String]) -> Result<Self> {
        let mut builder = Builder {
            scope: free.to_vec(),
            predicates: Vec::new(),
            names: Vec::new(),
        };
        let root = builder.build(formula)?;
        Ok(Compiled {
            root,
            predicates: builder.predicates,
            names: builder.names,
            free: free.len(),
        })
    }

    pub fn eval(&self, model: &FiniteModel, free_values: &[usize]) -> Result<bool> {
        assert_eq!(free_values.len(), self.free, "one value per free variable");
        let mut relations = Vec::with_capacity(self.predicates.len());
        for (p, arity) in &self.predicates {
            match model.relations.get(p) {
                Some(r) if r.arity == *arity => relations.push(r),
                Some(r) => {
                    return Err(Error::InvalidArgument(format!(
                        "model interprets `{p}` with arity {}, formula uses {arity}",
                        r.arity
                    )))
                }
                None => return Err(Error::InvalidArgument(format!("model does not interpret `{p}`"))),
            }
        }
        let mut names = vec![0; self.names.iter().copied().max().map_or(0, |m| m + 1)];
        for &k in &self.names {
            names[k] = model.name(k).ok_or(Error::UnassignedName(k))?;
        }
        let mut ctx = Context {
            size: model.size,
            relations,
            names,
            stack: free_values.to_vec(),
        };
        Ok(ctx.eval(&self.root))
    }
}

struct Builder {
    scope: Vec<String>,
    predicates: Vec<(String, usize)>,
    names: Vec<usize>,
}

impl Builder {
    fn slot(&mut self, t: &Term) -> Result<Slot> {
        match t {
            Term::Var(v) => self
                .scope
                .iter()
                .rposition(|s| s == v)
                .map(Slot::Var)
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Name(k) => {
                if !self.names.contains(k) {
                    self.names.push(*k);
                }
                Ok(Slot::Name(*k))
            }
        }
    }

    fn build(&mut self, f: &Formula) -> Result<Node> {
        Ok(match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Pred(p, args) => {
                let idx = match self.predicates.iter().position(|(q, _)| q == p) {
                    Some(i) if self.predicates[i].1 == args.len() => i,
                    Some(_) => {
                        return Err(Error::InvalidArgument(format!("predicate `{p}` used with two arities")))
                    }
                    None => {
                        self.predicates.push((p.clone(), args.len()));
                        self.predicates.len() - 1
                    }
                };
                let slots = args.iter().map(|t| self.slot(t)).collect::<Result<_>>()?;
                Node::Atom(idx, slots)
            }
            Formula::Eq(a, b) => Node::Eq(self.slot(a)?, self.slot(b)?),
            Formula::Not(g) => Node::Not(Box::new(self.build(g)?)),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.build(g)).collect::<Result<_>>()?),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.build(g)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => Node::Implies(Box::new(self.build(a)?), Box::new(self.build(b)?)),
            Formula::Iff(a, b) => Node::Iff(Box::new(self.build(a)?), Box::new(self.build(b)?)),
            Formula::Quant(q, v, body) => {
                self.scope.push(v.clone());
                let inner = self.build(body);
                self.scope.pop();
                let inner = Box::new(inner?);
                match q {
                    Quantifier::Forall => Node::Forall(inner),
                    Quantifier::Exists => Node::Exists(inner),
                }
            }
        })
    }
}

struct Context<'m> {
    size: usize,
    relations: Vec<&'m Relation>,
    names: Vec<usize>,
    stack: Vec<usize>,
}

impl Context<'_> {
    fn value(&self, s: Slot) -> usize {
        match s {
            Slot::Var(i) => self.stack[i],
            Slot::Name(k) => self.names[k],
        }
    }

    fn eval(&mut self, node: &Node) -> bool {
        match node {
            Node::Const(b) => *b,
            Node::Atom(rel, args) => {
                let index = args.iter().fold(0, |acc, &s| acc * self.size + self.value(s));
                self.relations[*rel].bits[index]
            }
            Node::Eq(a, b) => self.value(*a) == self.value(*b),
            Node::Not(g) => !self.eval(g),
            Node::And(gs) => gs.iter().all(|g| self.eval(g)),
            Node::Or(gs) => gs.iter().any(|g| self.eval(g)),
            Node::Implies(a, b) => !self.eval(a) || self.eval(b),
            Node::Iff(a, b) => self.eval(a) == self.eval(b),
            Node::Forall(body) => self.quantify(body, true),
            Node::Exists(body) => self.quantify(body, false),
        }
    }

    /// `universal` stops at the first falsifying element, otherwise at the
    /// first witness.
    fn quantify(&mut self, body: &Node, universal: bool) -> bool {
        self.stack.push(0);
        let top = self.stack.len() - 1;
        let mut result = universal;
        for e in 0..self.size {
            self.stack[top] = e;
            if self.eval(body) != universal {
                result = !universal;
                break;
            }
        }
        self.stack.pop();
        result
    }
}

/// Number of models of `sig` over a universe of `size` elements.
pub fn model_count(sig: &Signature, size: usize) -> BigInt {
    let bits: u64 = sig
        .predicates()
        .map(|(_, a)| (size as u64).saturating_pow(a as u32))
        .fold(0u64, u64::saturating_add);
    BigInt::one() << bits
}

/// Every interpretation of `sig` over a universe of `size` elements,
/// each exactly once. Model `i` sets tuple bit `j` iff bit `j` of `i` is
/// set, bits running over predicates in name order and then tuples in
/// lexicographic order.
pub fn enumerate_models(sig: &Signature, size: usize) -> Result<ModelIter> {
    let template = FiniteModel::new(size, sig)?;
    let count = model_count(sig, size);
    let total = match count.to_u64() {
        Some(n) if n <= MODEL_LIMIT => n,
        _ => {
            return Err(Error::TooLarge {
                what: "model enumeration",
                count,
                limit: MODEL_LIMIT,
            })
        }
    };
    Ok(ModelIter {
        template,
        next: 0,
        total,
    })
}

pub struct ModelIter {
    template: FiniteModel,
    next: u64,
    total: u64,
}

impl ModelIter {
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for ModelIter {
    type Item = FiniteModel;

    fn next(&mut self) -> Option<FiniteModel> {
        if self.next >= self.total {
            return None;
        }
        let mut model = self.template.clone();
        let mut code = self.next;
        for rel in model.relations.values_mut() {
            for bit in rel.bits.iter_mut() {
                *bit = code & 1 == 1;
                code >>= 1;
            }
        }
        self.next += 1;
        Some(model)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ModelIter {}
