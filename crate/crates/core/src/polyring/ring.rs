use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    Rationals,
}

impl Domain {
    pub fn symbol(self) -> char {
        match self {
            Domain::Integers => 'Z',
            Domain::Rationals => 'Q',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

/// Coefficient domain plus an ordered list of weighted variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedRingSpec {
    domain: Domain,
    vars: Vec<Variable>,
}

pub(crate) fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GradedRingSpec {
    pub fn new<S: Into<String>>(domain: Domain, vars: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let vars: Vec<Variable> = vars
            .into_iter()
            .map(|(name, weight)| Variable { name: name.into(), weight })
            .collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(&v.name) {
                return Err(Error::InvalidRing(format!("bad variable name `{}`", v.name)));
            }
            if v.weight == 0 {
                return Err(Error::InvalidRing(format!("variable `{}` has weight 0", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(Self { domain, vars })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn with_domain(&self, domain: Domain) -> Self {
        Self { domain, vars: self.vars.clone() }
    }
}

impl fmt::Display for GradedRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.domain.symbol())?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", v.name, v.weight)?;
        }
        write!(f, "]")
    }
}

/// Parses `Z[name:weight,...]` or `Q[name:weight,...]`. A missing `:weight` means weight 1.
impl FromStr for GradedRingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("ring spec `{s}`: {msg}") };
        let domain = match s.chars().next() {
            Some('Z') | Some('z') => Domain::Integers,
            Some('Q') | Some('q') => Domain::Rationals,
            _ => return Err(bad("expected Z[...] or Q[...]")),
        };
        let inner = s[1..]
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("missing brackets"))?;
        let mut vars = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, weight) = match item.split_once(':') {
                Some((n, w)) => {
                    let w: u32 = w.trim().parse().map_err(|_| bad("weight is not a positive integer"))?;
                    (n.trim().to_string(), w)
                }
                None => (item.to_string(), 1),
            };
            vars.push((name, weight));
        }
        GradedRingSpec::new(domain, vars)
    }
}

/// An admissible monomial order on exponent vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken reverse-lexicographically.
    #[default]
    WeightedDegRevLex,
    /// Compare the first `split` variables with `outer`; on a tie compare the rest with `inner`.
    Block { split: usize, outer: Box<MonomialOrder>, inner: Box<MonomialOrder> },
}

impl MonomialOrder {
    /// Elimination order for the first `k` variables, degrevlex inside each block.
    pub fn elimination(k: usize) -> Self {
        MonomialOrder::Block {
            split: k,
            outer: Box::new(MonomialOrder::WeightedDegRevLex),
            inner: Box::new(MonomialOrder::WeightedDegRevLex),
        }
    }

    pub fn compare(&self, weights: &[u32], a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::WeightedDegRevLex => {
                let da: u64 = a.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                let db: u64 = b.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            // smaller exponent in the last differing variable wins
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Block { split, outer, inner } => {
                let k = (*split).min(a.len());
                outer
                    .compare(&weights[..k], &a[..k], &b[..k])
                    .then_with(|| inner.compare(&weights[k..], &a[k..], &b[k..]))
            }
        }
    }
}

/// A ring specification together with the monomial order used to sort terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    spec: GradedRingSpec,
    order: MonomialOrder,
    weights: Vec<u32>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(spec: GradedRingSpec) -> RingRef {
        Self::with_order(spec, MonomialOrder::default())
    }

    pub fn with_order(spec: GradedRingSpec, order: MonomialOrder) -> RingRef {
        let weights = spec.weights();
        Arc::new(Ring { spec, order, weights })
    }

    pub fn parse(spec: &str) -> Result<RingRef> {
        Ok(Ring::new(spec.parse()?))
    }

    pub fn spec(&self) -> &GradedRingSpec {
        &self.spec
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn domain(&self) -> Domain {
        self.spec.domain
    }

    pub fn nvars(&self) -> usize {
        self.spec.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.spec.vars[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.spec.index_of(name)
    }

    pub fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.compare(&self.weights, a, b)
    }

    pub fn degree_of(&self, exps: &[u32]) -> u64 {
        exps.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    /// Same ring, different term order.
    pub fn reordered(&self, order: MonomialOrder) -> RingRef {
        Ring::with_order(self.spec.clone(), order)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}
