//! Quantum integers, factorials, binomials and finite group orders.

use crate::error::{Error, Result};

use super::vpoly::VPoly;

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn quantum_int(n: u32) -> VPoly {
    VPoly::from_q_coeffs(&vec![1i64; n as usize])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn quantum_factorial(n: u32) -> VPoly {
    (1..=n).fold(VPoly::one(), |acc, i| &acc * &quantum_int(i))
}

/// Gaussian binomial, the number of `k`-dimensional subspaces of `F_q^n`.
pub fn quantum_binomial(n: u32, k: u32) -> Result<VPoly> {
    if k > n {
        return Err(Error::InvalidArgument(format!("binomial({n}, {k}) with k > n")));
    }
    Ok(gaussian(n, k))
}

/// Pascal recursion `binom(n,k) = binom(n-1,k-1) + q^k binom(n-1,k)`; avoids division.
pub(crate) fn gaussian(n: u32, k: u32) -> VPoly {
    let k = k.min(n - k) as usize;
    let mut row: Vec<VPoly> = vec![VPoly::one(); k + 1];
    for j in 1..=k {
        row[j] = VPoly::zero();
    }
    for m in 1..=n as usize {
        for j in (1..=k.min(m)).rev() {
            let add = row[j].shift(2 * j as i64);
            row[j] = &row[j - 1] + &add;
        }
    }
    row[k].clone()
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32) -> VPoly {
    (0..n).fold(VPoly::one(), |acc, i| {
        let f = &VPoly::q_pow(n as i64) - &VPoly::q_pow(i as i64);
        &acc * &f
    })
}
