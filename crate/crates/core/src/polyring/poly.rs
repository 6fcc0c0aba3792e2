use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{Domain, RingRef};
use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub monomial: Monomial,
}

/// Exact polynomial; terms are kept sorted in descending order under the ring's monomial order,
/// with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Result of [`Polynomial::weighted_degree`]. `degree` is `None` for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degree: Option<u64>,
    pub homogeneous: bool,
}

pub(crate) fn int(n: impl Into<BigInt>) -> Coeff {
    BigRational::from_integer(n.into())
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Self {
        Self::from_terms(ring, vec![Term { coeff: c, monomial: Monomial::one(ring.nvars()) }])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn from_int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, int(n))
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::from_terms(ring, vec![Term { coeff: Coeff::one(), monomial: Monomial::var(ring.nvars(), i, 1) }])
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Option<Self> {
        ring.index_of(name).map(|i| Self::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, coeff: Coeff, monomial: Monomial) -> Self {
        Self::from_terms(ring, vec![Term { coeff, monomial }])
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates are combined).
    pub fn from_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for t in terms {
            assert_eq!(t.monomial.0.len(), ring.nvars(), "monomial length must match the ring");
            *acc.entry(t.monomial).or_insert_with(Coeff::zero) += t.coeff;
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_by(|a, b| ring.cmp_exponents(&b.monomial.0, &a.monomial.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts that `terms` is already sorted and zero-free.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn has_integral_coeffs(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_integer())
    }

    pub(crate) fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.spec() != other.ring.spec() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    /// Re-sorts the terms under another ring with the same specification.
    pub fn in_ring(&self, ring: &RingRef) -> Result<Polynomial> {
        if self.ring.spec() != ring.spec() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, ring)));
        }
        if Arc::ptr_eq(&self.ring, ring) || self.ring.order() == ring.order() {
            return Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() });
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp_exponents(&b.monomial.0, &a.monomial.0));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check_ring(other)?;
        let other = if self.same_ring(other) { other.clone() } else { other.in_ring(&self.ring)? };
        Ok(match op {
            ArithOp::Add => self.add_ref(&other),
            ArithOp::Sub => self.sub_ref(&other),
            ArithOp::Mul => self.mul_ref(&other),
        })
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        debug_assert!(self.same_ring(other));
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.cmp_exponents(&a[i].monomial.0, &b[j].monomial.0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].coeff } else { b[j].coeff.clone() };
                    out.push(Term { coeff: c, monomial: b[j].monomial.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].coeff - &b[j].coeff } else { &a[i].coeff + &b[j].coeff };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, monomial: a[i].monomial.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { -&t.coeff } else { t.coeff.clone() };
            out.push(Term { coeff: c, monomial: t.monomial.clone() });
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn add_ref(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub(crate) fn sub_ref(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub(crate) fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].coeff, &other.terms[0].monomial);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].coeff, &self.terms[0].monomial);
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for s in &self.terms {
            for t in &other.terms {
                *acc.entry(s.monomial.mul(&t.monomial)).or_insert_with(Coeff::zero) += &s.coeff * &t.coeff;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect::<Vec<_>>();
        let mut p = Polynomial { ring: self.ring.clone(), terms };
        let ring = p.ring.clone();
        p.terms.sort_by(|a, b| ring.cmp_exponents(&b.monomial.0, &a.monomial.0));
        p
    }

    /// Multiplication by `c * m`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: &t.coeff * c, monomial: t.monomial.mul(m) })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn weighted_degree(&self) -> DegreeInfo {
        let mut degs = self.terms.iter().map(|t| self.ring.degree_of(&t.monomial.0));
        match degs.next() {
            None => DegreeInfo { degree: None, homogeneous: true },
            Some(first) => {
                let (mut max, mut homogeneous) = (first, true);
                for d in degs {
                    if d != first {
                        homogeneous = false;
                    }
                    max = max.max(d);
                }
                DegreeInfo { degree: Some(max), homogeneous }
            }
        }
    }

    /// Degree of a homogeneous polynomial; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let info = self.weighted_degree();
        if info.homogeneous {
            info.degree
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree().homogeneous
    }

    pub fn homogeneous_components(&self) -> Vec<(u64, Polynomial)> {
        let mut parts: Vec<(u64, Vec<Term>)> = Vec::new();
        for t in &self.terms {
            let d = self.ring.degree_of(&t.monomial.0);
            match parts.iter_mut().find(|(e, _)| *e == d) {
                Some((_, v)) => v.push(t.clone()),
                None => parts.push((d, vec![t.clone()])),
            }
        }
        parts.sort_by_key(|(d, _)| *d);
        parts.into_iter().map(|(d, ts)| (d, Polynomial::from_sorted(&self.ring, ts))).collect()
    }

    /// Scales by the lcm of the coefficient denominators so that all coefficients are integers.
    pub fn clear_denominators(&self) -> Polynomial {
        let l = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, t| num_integer::Integer::lcm(&acc, t.coeff.denom()));
        self.scale(&BigRational::from_integer(l))
    }

    /// Normalizes to a positive leading coefficient (over Z) or to a monic polynomial (over Q).
    pub fn normalized(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => match self.ring.domain() {
                Domain::Integers => {
                    if lc.is_negative() {
                        -self
                    } else {
                        self.clone()
                    }
                }
                Domain::Rationals => self.scale(&lc.recip()),
            },
        }
    }

    /// Exact division by `d`; fails if some quotient coefficient is not allowed in the ring or
    /// the division leaves a remainder.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        if d.is_zero() {
            return Err(Error::DivisionFailure("division by zero".into()));
        }
        let ring = self.ring.clone();
        let (lc, lm) = (d.terms[0].coeff.clone(), d.terms[0].monomial.clone());
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(t) = rem.terms.first().cloned() {
            if !lm.divides(&t.monomial) {
                return Err(Error::DivisionFailure(format!("{} is not divisible by {}", self, d)));
            }
            let c = &t.coeff / &lc;
            if ring.domain() == Domain::Integers && !c.is_integer() {
                return Err(Error::DivisionFailure(format!("{} is not divisible by {} over Z", self, d)));
            }
            let m = lm.quotient_of(&t.monomial);
            rem = rem.sub_ref(&d.mul_term(&c, &m));
            quotient.push(Term { coeff: c, monomial: m });
        }
        Ok(Polynomial::from_terms(&ring, quotient))
    }

    pub fn max_abs_coeff(&self) -> Coeff {
        self.terms.iter().map(|t| t.coeff.abs()).max().unwrap_or_else(Coeff::zero)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.monomial.0[i] > 0))
            .collect()
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.ring.spec() != other.ring.spec() {
            return false;
        }
        if self.ring.order() == other.ring.order() {
            return self.terms == other.terms;
        }
        match other.in_ring(&self.ring) {
            Ok(o) => self.terms == o.terms,
            Err(_) => false,
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} in {})", self, self.ring)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Add).expect("ring mismatch in +")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Sub).expect("ring mismatch in -")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Mul).expect("ring mismatch in *")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|t| Term { coeff: -&t.coeff, monomial: t.monomial.clone() }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// `a op b` with ring checking.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    a.arith(b, op)
}
