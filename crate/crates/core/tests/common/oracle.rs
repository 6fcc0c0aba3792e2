//! Brute-force membership for homogeneous ideals over Z: `f` of degree `d` lies in `I` iff its
//! coefficient vector is an integer combination of the rows `m*g` of degree `d`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use m21_core::polyring::{Coeff, Monomial, Polynomial, Ring, RingRef, Term};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Exponent vectors of weighted degree `d`, independent of the crate's own enumeration.
pub fn monomials(weights: &[u32], d: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn go(w: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0u32;
        while u64::from(e) * u64::from(w[i]) <= left {
            cur[i] = e;
            go(w, i + 1, left - u64::from(e) * u64::from(w[i]), cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    go(weights, 0, d, &mut cur, &mut out);
    out
}

fn degree(weights: &[u32], e: &[u32]) -> u64 {
    weights.iter().zip(e).map(|(&w, &x)| u64::from(w) * u64::from(x)).sum()
}

/// Integer coefficients by exponent vector; panics on non-integral input.
pub fn coeffs(p: &Polynomial) -> BTreeMap<Vec<u32>, BigInt> {
    p.terms()
        .iter()
        .map(|t| {
            assert!(t.coeff.is_integer(), "non-integral coefficient in {p}");
            (t.monomial.0.clone(), t.coeff.to_integer())
        })
        .collect()
}

pub fn from_coeffs(ring: &RingRef, c: &BTreeMap<Vec<u32>, BigInt>) -> Polynomial {
    let terms = c
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(e, v)| Term { coeff: Coeff::from_integer(v.clone()), monomial: Monomial(e.clone()) })
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn mul(a: &BTreeMap<Vec<u32>, BigInt>, b: &BTreeMap<Vec<u32>, BigInt>) -> BTreeMap<Vec<u32>, BigInt> {
    let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Integer row echelon form; each pivot column holds one row with a nonzero entry there
/// among rows at or below it.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..ncols {
        loop {
            let nz: Vec<usize> = (top..rows.len()).filter(|&r| !rows[r][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&r) = nz.first() {
                    rows.swap(top, r);
                    pivots.push(c);
                    top += 1;
                }
                break;
            }
            let best = *nz.iter().min_by_key(|&&r| rows[r][c].abs()).unwrap();
            rows.swap(top, best);
            for r in top + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[top][c]);
                for k in c..ncols {
                    let v = &rows[top][k] * &q;
                    rows[r][k] -= v;
                }
            }
        }
    }
    rows.truncate(top);
    Echelon { rows, pivots }
}

fn in_row_span(e: &Echelon, mut b: Vec<BigInt>) -> bool {
    for (row, &c) in e.rows.iter().zip(&e.pivots) {
        if b[c].is_zero() {
            continue;
        }
        let (q, r) = b[c].div_rem(&row[c]);
        if !r.is_zero() {
            return false;
        }
        for k in c..b.len() {
            let v = &row[k] * &q;
            b[k] -= v;
        }
    }
    b.iter().all(Zero::is_zero)
}

/// Membership of an arbitrary `f` in the ideal generated by homogeneous `gens` over Z.
pub fn member(weights: &[u32], gens: &[Polynomial], f: &Polynomial) -> bool {
    let fc = coeffs(f);
    let mut by_degree: BTreeMap<u64, BTreeMap<Vec<u32>, BigInt>> = BTreeMap::new();
    for (e, c) in fc {
        by_degree.entry(degree(weights, &e)).or_default().insert(e, c);
    }
    by_degree.into_iter().all(|(d, part)| {
        let basis = monomials(weights, d);
        let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            let gc = coeffs(g);
            let Some(e) = gc.keys().next().map(|e| degree(weights, e)) else { continue };
            if e > d {
                continue;
            }
            for m in monomials(weights, d - e) {
                let mono: BTreeMap<Vec<u32>, BigInt> = [(m, BigInt::one())].into();
                let mut row = vec![BigInt::zero(); basis.len()];
                for (k, v) in mul(&mono, &gc) {
                    row[index[&k]] = v;
                }
                rows.push(row);
            }
        }
        let mut b = vec![BigInt::zero(); basis.len()];
        for (k, v) in part {
            b[index[&k]] = v;
        }
        in_row_span(&echelon(rows, basis.len()), b)
    })
}

/// A random ring `Z[x0..]` with up to three variables of weight 1 or 2.
pub fn random_ring(rng: &mut impl Rng) -> (RingRef, Vec<u32>) {
    let n = rng.gen_range(1..=3);
    let weights: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.25) { 2 } else { 1 }).collect();
    let spec: Vec<String> = weights.iter().enumerate().map(|(i, w)| format!("x{i}:{w}")).collect();
    (Ring::parse(&format!("Z[{}]", spec.join(","))).unwrap(), weights)
}

/// Random homogeneous polynomial of degree `d` with coefficients in `[-c, c]`.
pub fn random_homogeneous(rng: &mut impl Rng, ring: &RingRef, weights: &[u32], d: u64, c: i64) -> Polynomial {
    let mut out = BTreeMap::new();
    for m in monomials(weights, d) {
        if rng.gen_bool(0.6) {
            out.insert(m, BigInt::from(rng.gen_range(-c..=c)));
        }
    }
    from_coeffs(ring, &out)
}

/// Random polynomial of degree at most `d`, mixing homogeneous pieces.
pub fn random_poly(rng: &mut impl Rng, ring: &RingRef, weights: &[u32], d: u64, c: i64) -> Polynomial {
    let mut p = Polynomial::zero(ring);
    for k in 0..=d {
        if rng.gen_bool(0.5) {
            p = p + random_homogeneous(rng, ring, weights, k, c);
        }
    }
    p
}

/// `sum h_i g_i` with random homogeneous cofactors making each summand of degree `d`.
pub fn random_combination(rng: &mut impl Rng, weights: &[u32], gens: &[Polynomial], d: u64) -> Polynomial {
    let ring = gens[0].ring().clone();
    let mut f = Polynomial::zero(&ring);
    for g in gens {
        if let Some(e) = g.homogeneous_degree() {
            if e <= d {
                f = f + random_homogeneous(rng, &ring, weights, d - e, 3) * g.clone();
            }
        }
    }
    f
}

/// Divides by the content, which typically leaves the Z-ideal while staying in the Q-ideal.
pub fn primitive_part(f: &Polynomial) -> Polynomial {
    let c = coeffs(f).values().fold(BigInt::zero(), |a, b| a.gcd(b));
    if c.is_zero() || c.is_one() {
        return f.clone();
    }
    from_coeffs(f.ring(), &coeffs(f).into_iter().map(|(e, v)| (e, v / &c)).collect())
}
