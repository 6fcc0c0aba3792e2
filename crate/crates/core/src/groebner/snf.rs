use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j) + f * s;
                self.set(dst, j, v);
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst) + f * s;
                self.set(i, dst, v);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

/// `U·M·V = D` with `D` diagonal, `d_i | d_(i+1)` and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut tr = Tracked { d: m.clone(), u: Some(IntegerMatrix::identity(m.rows)), v: Some(IntegerMatrix::identity(m.cols)) };
    tr.run();
    SmithForm { u: tr.u.unwrap(), d: tr.d, v: tr.v.unwrap() }
}

/// The nonzero invariant factors of `m`, without tracking the transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut tr = Tracked { d: m.clone(), u: None, v: None };
    tr.run();
    tr.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
}

struct Tracked {
    d: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

impl Tracked {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_row(dst, src, f);
        if let Some(u) = &mut self.u {
            u.add_row(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_col(dst, src, f);
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, f);
        }
    }

    /// Moves the smallest nonzero entry of the trailing block at `t` to `(t, t)`.
    fn pivot(&mut self, t: usize) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows {
            for j in t..self.d.cols {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { return false };
        self.swap_rows(t, i);
        self.swap_cols(t, j);
        true
    }

    fn run(&mut self) {
        let n = self.d.rows.min(self.d.cols);
        for t in 0..n {
            if !self.pivot(t) {
                break;
            }
            loop {
                let p = self.d.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..self.d.rows {
                    if self.d.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.d.get(i, t).div_floor(&p);
                    self.add_row(i, t, &-q);
                    clean &= self.d.get(i, t).is_zero();
                }
                for j in t + 1..self.d.cols {
                    if self.d.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.d.get(t, j).div_floor(&p);
                    self.add_col(j, t, &-q);
                    clean &= self.d.get(t, j).is_zero();
                }
                if !clean {
                    // a remainder smaller than the pivot is left in row or column t
                    self.pivot_line(t);
                    continue;
                }
                let bad = (t + 1..self.d.rows)
                    .find(|&i| (t + 1..self.d.cols).any(|j| !self.d.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.d.get(t, t).is_negative() {
                self.d.negate_row(t);
                if let Some(u) = &mut self.u {
                    u.negate_row(t);
                }
            }
        }
    }

    /// Smallest nonzero entry of row `t` / column `t` becomes the pivot.
    fn pivot_line(&mut self, t: usize) {
        let mut best = (t, t);
        let mut val = self.d.get(t, t).abs();
        for i in t + 1..self.d.rows {
            let x = self.d.get(i, t).abs();
            if !x.is_zero() && x < val {
                val = x;
                best = (i, t);
            }
        }
        for j in t + 1..self.d.cols {
            let x = self.d.get(t, j).abs();
            if !x.is_zero() && x < val {
                val = x;
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}
