use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ideal::IdealPresentation;
use super::snf::{invariant_factors, IntegerMatrix};
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, Coeff, Domain, Monomial, Polynomial};

/// Degree-`d` piece of `R/I` as an abelian group (over Q only the rank is meaningful).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u64,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl std::fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for t in &self.torsion {
            write!(f, " + Z/{t}")?;
        }
        Ok(())
    }
}

/// Rows spanning `I_d` in the monomial basis of degree `d` (returned alongside).
pub fn degree_part(i: &IdealPresentation, d: u64) -> Result<(Vec<Monomial>, Vec<Vec<Coeff>>)> {
    if !i.is_homogeneous() {
        return Err(Error::InhomogeneousIdeal(format!("{i}")));
    }
    let ring = i.ring();
    let basis = monomials_of_degree(ring, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = Vec::new();
    for g in i.generators() {
        let e = g.homogeneous_degree().expect("homogeneous generator");
        if e > d {
            continue;
        }
        for m in monomials_of_degree(ring, d - e) {
            let p: Polynomial = g.mul_term(&Coeff::one(), &m);
            let mut row = vec![Coeff::zero(); basis.len()];
            for t in p.terms() {
                row[index[&t.monomial]] = t.coeff.clone();
            }
            rows.push(row);
        }
    }
    Ok((basis, rows))
}

fn rational_rank(mut rows: Vec<Vec<Coeff>>, ncols: usize) -> usize {
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..ncols {
                    let v = &rows[rank][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn graded_component(i: &IdealPresentation, d: u64) -> Result<GradedPiece> {
    let (basis, rows) = degree_part(i, d)?;
    let n = basis.len();
    match i.ring().domain() {
        Domain::Rationals => {
            let rank = rational_rank(rows, n);
            Ok(GradedPiece { degree: d, free_rank: n - rank, torsion: Vec::new() })
        }
        Domain::Integers => {
            let ints: Vec<Vec<BigInt>> =
                rows.into_iter().map(|r| r.into_iter().map(|c| c.numer().clone()).collect()).collect();
            let m = if ints.is_empty() { IntegerMatrix::zeros(0, n) } else { IntegerMatrix::from_rows(&ints) };
            let factors = invariant_factors(&m);
            let torsion = factors.iter().filter(|f| !f.is_one()).cloned().collect();
            Ok(GradedPiece { degree: d, free_rank: n - factors.len(), torsion })
        }
    }
}
