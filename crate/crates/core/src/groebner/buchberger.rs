//! Buchberger closure: strong bases over Z (S- and G-polynomials), reduced bases over Q.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ideal::IdealPresentation;
use crate::error::{Error, Result};
use crate::polyring::{Coeff, Domain, MonomialOrder, Polynomial, RingRef, Term};

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strength {
    /// Leading terms (coefficients included) of the ideal are generated by those of the basis.
    StrongZ,
    /// Monic and pairwise fully reduced.
    ReducedQ,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ideal: IdealPresentation,
    order: MonomialOrder,
    ring: RingRef,
    basis: Vec<Polynomial>,
    strength: Strength,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The ring (specification plus order) the basis elements live in.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn strength(&self) -> Strength {
        self.strength
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && {
            let c = self.basis[0].leading_coeff().unwrap();
            self.strength == Strength::ReducedQ || c.abs().is_one()
        }
    }

    /// Remainder of `f` modulo the basis; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring().spec() != self.ring.spec() {
            return Err(Error::RingMismatch(format!("{} is not over {}", f, self.ring)));
        }
        let f = f.in_ring(&self.ring)?;
        let mut budget = Budget::new(u64::MAX);
        reduce(&f, &self.basis, &mut budget)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

pub(crate) struct Budget {
    left: u64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Self { left: limit, limit }
    }

    fn step(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded(self.limit));
        }
        self.left -= 1;
        Ok(())
    }
}

fn zint(c: &Coeff) -> &BigInt {
    debug_assert!(c.is_integer());
    c.numer()
}

fn q(n: BigInt) -> Coeff {
    BigRational::from_integer(n)
}

/// Full reduction of `f`. Over Z a term `c*m` is reduced by the divisor `g` whose leading
/// monomial divides `m` with the smallest leading coefficient, replacing `c` by its
/// nonnegative remainder modulo `lc(g)`; over Q by exact cancellation.
pub(crate) fn reduce(f: &Polynomial, basis: &[Polynomial], budget: &mut Budget) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let over_z = ring.domain() == Domain::Integers;
    let mut p = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.leading_term().cloned() {
        let mut best: Option<&Polynomial> = None;
        for g in basis {
            let lm = g.leading_monomial().expect("nonzero basis element");
            if !lm.divides(&lt.monomial) {
                continue;
            }
            if !over_z {
                best = Some(g);
                break;
            }
            let better = match best {
                None => true,
                Some(b) => g.leading_coeff().unwrap().abs() < b.leading_coeff().unwrap().abs(),
            };
            if better {
                best = Some(g);
            }
        }
        let Some(g) = best else {
            rem.push(lt);
            p = Polynomial::from_sorted(&ring, p.into_terms().split_off(1));
            continue;
        };
        let glt = g.leading_term().unwrap();
        let m = glt.monomial.quotient_of(&lt.monomial);
        let factor = if over_z {
            let (quo, _) = zint(&lt.coeff).div_mod_floor(zint(&glt.coeff));
            q(quo)
        } else {
            &lt.coeff / &glt.coeff
        };
        if !factor.is_zero() {
            budget.step()?;
            p = p.sub_ref(&g.mul_term(&factor, &m));
        }
        // whatever is left at this monomial cannot be reduced further
        if let Some(t) = p.leading_term() {
            if t.monomial == lt.monomial {
                rem.push(t.clone());
                p = Polynomial::from_sorted(&ring, p.into_terms().split_off(1));
            }
        }
    }
    Ok(Polynomial::from_sorted(&ring, rem))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PairKind {
    // G-pairs first: their output has the gcd as leading coefficient and retires both parents
    G,
    S,
}

fn spoly(f: &Polynomial, g: &Polynomial, over_z: bool) -> Polynomial {
    let (ft, gt) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let m = ft.monomial.lcm(&gt.monomial);
    let (mf, mg) = (ft.monomial.quotient_of(&m), gt.monomial.quotient_of(&m));
    if over_z {
        let (a, b) = (zint(&ft.coeff), zint(&gt.coeff));
        let l = a.lcm(b);
        f.mul_term(&q(&l / a), &mf).sub_ref(&g.mul_term(&q(&l / b), &mg))
    } else {
        f.mul_term(&ft.coeff.recip(), &mf).sub_ref(&g.mul_term(&gt.coeff.recip(), &mg))
    }
}

fn gpoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (ft, gt) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let m = ft.monomial.lcm(&gt.monomial);
    let (mf, mg) = (ft.monomial.quotient_of(&m), gt.monomial.quotient_of(&m));
    let eg = zint(&ft.coeff).extended_gcd(zint(&gt.coeff));
    f.mul_term(&q(eg.x), &mf).add_ref(&g.mul_term(&q(eg.y), &mg))
}

/// True if some leading term already divides the leading term the G-polynomial would have.
fn gpoly_covered(f: &Polynomial, g: &Polynomial, basis: &[Polynomial]) -> bool {
    let (ft, gt) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let m = ft.monomial.lcm(&gt.monomial);
    let c = zint(&ft.coeff).gcd(zint(&gt.coeff));
    basis.iter().any(|k| {
        let kt = k.leading_term().unwrap();
        kt.monomial.divides(&m) && c.is_multiple_of(zint(&kt.coeff))
    })
}

fn needs_gpoly(a: &BigInt, b: &BigInt) -> bool {
    !(b.is_multiple_of(a) || a.is_multiple_of(b))
}

fn is_unit(p: &Polynomial) -> bool {
    p.is_constant()
        && match p.ring().domain() {
            Domain::Rationals => true,
            Domain::Integers => p.leading_coeff().unwrap().abs().is_one(),
        }
}

/// Buchberger closure in the ring `ring` (which fixes the order).
pub(crate) fn buchberger(gens: &[Polynomial], ring: &RingRef, budget: &mut Budget) -> Result<Vec<Polynomial>> {
    let over_z = ring.domain() == Domain::Integers;
    let mut st = Closure { ring, over_z, basis: Vec::new(), active: Vec::new(), reducers: Vec::new(), pairs: BinaryHeap::new(), seq: 0 };

    let mut sorted: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by_key(|g| g.weighted_degree().degree);
    for g in sorted {
        let h = reduce(&g, &st.reducers, budget)?;
        if h.is_zero() {
            continue;
        }
        if is_unit(&h) {
            return Ok(vec![Polynomial::one(ring)]);
        }
        st.insert(h);
    }

    while let Some(Reverse((_, kind, _, i, j))) = st.pairs.pop() {
        if kind == PairKind::G && gpoly_covered(&st.basis[i], &st.basis[j], &st.reducers) {
            continue;
        }
        let candidate = match kind {
            PairKind::S => spoly(&st.basis[i], &st.basis[j], over_z),
            PairKind::G => gpoly(&st.basis[i], &st.basis[j]),
        };
        budget.step()?;
        let h = reduce(&candidate, &st.reducers, budget)?;
        if h.is_zero() {
            continue;
        }
        if is_unit(&h) {
            return Ok(vec![Polynomial::one(ring)]);
        }
        st.insert(h);
    }
    interreduce(st.reducers, budget)
}

type Pair = Reverse<(u64, PairKind, u64, usize, usize)>;

struct Closure<'a> {
    ring: &'a RingRef,
    over_z: bool,
    /// Every element ever added; pairs index into this.
    basis: Vec<Polynomial>,
    /// False once a later element's leading term divides this one's.
    active: Vec<bool>,
    /// The active elements, used for reduction.
    reducers: Vec<Polynomial>,
    /// (degree of lcm, kind, sequence number, i, j)
    pairs: BinaryHeap<Pair>,
    seq: u64,
}

impl Closure<'_> {
    fn push_pair(&mut self, deg: u64, i: usize, j: usize, kind: PairKind) {
        self.pairs.push(Reverse((deg, kind, self.seq, i, j)));
        self.seq += 1;
    }

    fn insert(&mut self, h: Polynomial) {
        let h = h.normalized();
        let n = self.basis.len();
        let ht = h.leading_term().unwrap().clone();
        let (basis, over_z) = (&self.basis, self.over_z);
        // chain criterion: a queued S-pair whose lcm term is a multiple of lt(h) is implied by
        // the two pairs with h, provided both have strictly smaller lcm monomials
        self.pairs.retain(|Reverse((_, kind, _, i, j))| {
            if *kind != PairKind::S {
                return true;
            }
            let (it, jt) = (basis[*i].leading_term().unwrap(), basis[*j].leading_term().unwrap());
            let m = it.monomial.lcm(&jt.monomial);
            if !ht.monomial.divides(&m) || m == it.monomial.lcm(&ht.monomial) || m == jt.monomial.lcm(&ht.monomial) {
                return true;
            }
            over_z && !zint(&it.coeff).lcm(zint(&jt.coeff)).is_multiple_of(zint(&ht.coeff))
        });
        for i in 0..n {
            if !self.active[i] {
                continue;
            }
            let gt = self.basis[i].leading_term().unwrap();
            let deg = self.ring.degree_of(&gt.monomial.lcm(&ht.monomial).0);
            let coprime_m = gt.monomial.coprime(&ht.monomial);
            if over_z {
                let (a, b) = (zint(&gt.coeff), zint(&ht.coeff));
                let (s_pair, g_pair) = (!(coprime_m && a.gcd(b).is_one()), needs_gpoly(a, b));
                if s_pair {
                    self.push_pair(deg, i, n, PairKind::S);
                }
                if g_pair {
                    self.push_pair(deg, i, n, PairKind::G);
                }
            } else if !coprime_m {
                self.push_pair(deg, i, n, PairKind::S);
            }
        }
        for i in 0..n {
            if self.active[i] && lt_divides(&h, &self.basis[i], over_z) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
        self.reducers = self.basis.iter().zip(&self.active).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect();
    }
}

fn lt_divides(g: &Polynomial, h: &Polynomial, over_z: bool) -> bool {
    let (gt, ht) = (g.leading_term().unwrap(), h.leading_term().unwrap());
    gt.monomial.divides(&ht.monomial) && (!over_z || zint(&ht.coeff).is_multiple_of(zint(&gt.coeff)))
}

/// Drops elements whose leading term is a multiple of another leading term, then reduces tails.
fn interreduce(mut basis: Vec<Polynomial>, budget: &mut Budget) -> Result<Vec<Polynomial>> {
    if basis.is_empty() {
        return Ok(basis);
    }
    let ring = basis[0].ring().clone();
    let over_z = ring.domain() == Domain::Integers;
    basis.sort_by(|a, b| {
        let (at, bt) = (a.leading_term().unwrap(), b.leading_term().unwrap());
        ring.cmp_exponents(&at.monomial.0, &bt.monomial.0)
            .then_with(|| at.coeff.abs().cmp(&bt.coeff.abs()))
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for h in basis {
        if !minimal.iter().any(|g| lt_divides(g, &h, over_z)) {
            minimal.push(h);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let mut terms = g.terms().to_vec();
        let head = terms.remove(0);
        let tail = Polynomial::from_sorted(&ring, terms);
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
        let tail = reduce(&tail, &others, budget)?;
        let mut all = vec![head];
        all.extend(tail.into_terms());
        out.push(Polynomial::from_sorted(&ring, all).normalized());
    }
    Ok(out)
}

/// Computes a strong basis (over Z) or reduced basis (over Q) of `ideal` under `order`.
pub fn groebner_basis(ideal: &IdealPresentation, order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis_with_budget(ideal, order, DEFAULT_STEP_BUDGET)
}

pub fn groebner_basis_with_budget(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    step_budget: u64,
) -> Result<GroebnerBasis> {
    let ring = ideal.ring().reordered(order.clone());
    let gens = ideal.generators().iter().map(|g| g.in_ring(&ring)).collect::<Result<Vec<_>>>()?;
    if ring.domain() == Domain::Integers && gens.iter().any(|g| !g.has_integral_coeffs()) {
        return Err(Error::RationalInIntegerRing("generator with fractional coefficients".into()));
    }
    let mut budget = Budget::new(step_budget);
    let basis = buchberger(&gens, &ring, &mut budget)?;
    let strength = match ring.domain() {
        Domain::Integers => Strength::StrongZ,
        Domain::Rationals => Strength::ReducedQ,
    };
    Ok(GroebnerBasis { ideal: ideal.clone(), order: order.clone(), ring, basis, strength })
}

/// Remainder of `f` modulo `g`'s basis.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    g.normal_form(f)
}
