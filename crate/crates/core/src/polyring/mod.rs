//! Exact multivariate polynomials over Z and Q with weighted gradings.

mod parse;
mod poly;
mod ring;
mod subst;

pub use parse::{parse_poly, parse_poly_with, Resolver};
pub use poly::{poly_arith, ArithOp, Coeff, DegreeInfo, Monomial, Polynomial, Term};
pub use ring::{Domain, GradedRingSpec, MonomialOrder, Ring, RingRef, Variable};
pub use subst::{substitute, Substitution};


/// Every monomial of weighted degree `d`, in descending order.
pub fn monomials_of_degree(ring: &RingRef, d: u64) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i] as u64;
        let mut e = 0u64;
        while e * w <= left {
            cur[i] = e as u32;
            rec(weights, i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; ring.nvars()];
    rec(ring.weights(), 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| ring.cmp_exponents(&b.0, &a.0));
    out
}
