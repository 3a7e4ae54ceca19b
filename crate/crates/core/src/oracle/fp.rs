//! Prime fields and dense matrices over them.

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u32,
}

impl Fq {
    pub const DEFAULT_MAX_PRIME: u32 = 5;

    pub fn new(p: u32) -> Result<Self> {
        Self::with_bound(p, Self::DEFAULT_MAX_PRIME)
    }

    pub fn with_bound(p: u32, max: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p > max || p > 251 {
            return Err(Error::InvalidArgument(format!("prime {p} exceeds the bound {max}")));
        }
        Ok(Fq { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        let (mut acc, mut base, mut e) = (1u32, a as u32, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u8
    }

    /// `p^k`, or `None` on overflow.
    pub fn order_pow(&self, k: u64) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(k).ok()?)
    }
}

/// A row-major matrix with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &Fq, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let x = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &Fq, x: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Fq) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let x = f.mul(m.get(r, j), inv);
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                let a = m.get(i, c);
                if i != r && a != 0 {
                    for j in 0..m.cols {
                        let x = f.sub(m.get(i, j), f.mul(a, m.get(r, j)));
                        m.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Fq) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &Fq) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, piv) = aug.rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Basis of `{x : self x = 0}`.
    pub fn nullspace(&self, f: &Fq) -> Vec<Vec<u8>> {
        let (red, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0u8; self.cols];
                x[fc] = 1;
                for (r, &pc) in piv.iter().enumerate() {
                    x[pc] = f.neg(red.get(r, fc));
                }
                x
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }
}

/// All invertible `n x n` matrices.
pub fn general_linear(f: &Fq, n: usize) -> Vec<Mat> {
    let p = f.p() as usize;
    let total = p.pow((n * n) as u32);
    (0..total)
        .map(|mut idx| {
            let mut data = vec![0u8; n * n];
            for d in data.iter_mut() {
                *d = (idx % p) as u8;
                idx /= p;
            }
            Mat { rows: n, cols: n, data }
        })
        .filter(|m| m.is_invertible(f))
        .collect()
}

/// `|GL_n(F_p)|`.
pub fn gl_size(p: u32, n: u32) -> u128 {
    let pn = (p as u128).pow(n);
    (0..n).map(|i| pn - (p as u128).pow(i)).product()
}

/// Every `k`-dimensional subspace of `F_p^n`, as an RREF basis with its pivots.
pub fn subspaces(f: &Fq, n: usize, k: usize) -> Vec<(Mat, Vec<usize>)> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for piv in combinations(n, k) {
        let mut free = Vec::new();
        for (r, &pc) in piv.iter().enumerate() {
            for c in pc + 1..n {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let p = f.p() as usize;
        let count = p.pow(free.len() as u32);
        for mut idx in 0..count {
            let mut m = Mat::zeros(k, n);
            for (r, &pc) in piv.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for &(r, c) in &free {
                m.set(r, c, (idx % p) as u8);
                idx /= p;
            }
            out.push((m, piv.clone()));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut c in combinations(last, k - 1) {
            c.push(last);
            out.push(c);
        }
    }
    out
}

/// Reduce `x` modulo the row space of an RREF basis.
pub fn reduce(f: &Fq, basis: &Mat, pivots: &[usize], x: &[u8]) -> Vec<u8> {
    let mut y = x.to_vec();
    for (r, &pc) in pivots.iter().enumerate() {
        let a = y[pc];
        if a != 0 {
            for (j, yj) in y.iter_mut().enumerate() {
                *yj = f.sub(*yj, f.mul(a, basis.get(r, j)));
            }
        }
    }
    y
}
