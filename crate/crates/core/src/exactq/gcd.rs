//! Exact division and gcd in `Z[v, v^-1]`.
//!
//! The gcd strips monomial factors and a common exponent stride, then tries a
//! heuristic evaluation gcd before falling back to a primitive remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::vpoly::VPoly;

/// `a / b` if `b` divides `a` in `Z[v, v^-1]`.
pub fn exact_div(a: &VPoly, b: &VPoly) -> Option<VPoly> {
    assert!(!b.is_zero(), "exact_div by zero");
    if a.is_zero() {
        return Some(VPoly::zero());
    }
    if b.is_monomial() {
        let c = b.leading_coeff().unwrap();
        let q = a.shift(-b.low_exp());
        if q.dense().iter().all(|x| x.is_multiple_of(c)) {
            return Some(q.div_scalar_exact(c));
        }
        return None;
    }
    let shift = a.low_exp() - b.low_exp();
    let q = div_dense(a.dense(), b.dense())?;
    Some(VPoly::from_dense(shift, q))
}

/// Exact division of dense polynomials in `Z[v]` (ascending coefficients).
fn div_dense(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r: Vec<BigInt> = a.to_vec();
    let n = a.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let top = &r[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i + j] -= &qi * bj;
            }
        }
        q[i] = qi;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&a);
    if !c.is_zero() && !c.is_one() {
        for x in a.iter_mut() {
            *x /= &c;
        }
    }
    if a.last().is_some_and(|x| x.is_negative()) {
        for x in a.iter_mut() {
            *x = -&*x;
        }
    }
    a
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let off = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[off + j] -= &lr * bj;
        }
        r = trim(r);
    }
    r
}

fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (primitive(a.to_vec()), primitive(b.to_vec()))
    } else {
        (primitive(b.to_vec()), primitive(a.to_vec()))
    };
    loop {
        if b.is_empty() {
            return a;
        }
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(r);
    }
}

fn eval_at(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let norm = |p: &[BigInt]| p.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut xi: BigInt = 2 * norm(a).min(norm(b)) + 2;
    for _ in 0..6 {
        let h = eval_at(a, &xi).gcd(&eval_at(b, &xi));
        let mut g = Vec::new();
        let mut h = h;
        let half = &xi / 2;
        while !h.is_zero() {
            let mut r = h.mod_floor(&xi);
            if r > half {
                r -= &xi;
            }
            h = (h - &r) / &xi;
            g.push(r);
        }
        let g = primitive(trim(g));
        if !g.is_empty() && div_dense(a, &g).is_some() && div_dense(b, &g).is_some() {
            return Some(g);
        }
        xi = xi * 73794 / 27011 + 1;
    }
    None
}

fn stride(a: &[BigInt]) -> usize {
    let mut d = 0usize;
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() {
            d = d.gcd(&i);
        }
    }
    d
}

/// Primitive gcd of two nonzero Laurent polynomials, normalized to minimal
/// exponent 0 and positive leading coefficient. Integer content is not included.
pub fn gcd(a: &VPoly, b: &VPoly) -> VPoly {
    assert!(!a.is_zero() && !b.is_zero(), "gcd of zero");
    if a.is_monomial() || b.is_monomial() {
        return VPoly::one();
    }
    let (da, db) = (a.dense(), b.dense());
    let d = stride(da).gcd(&stride(db)).max(1);
    let compress = |p: &[BigInt]| -> Vec<BigInt> { p.iter().step_by(d).cloned().collect() };
    let (ca, cb) = (primitive(compress(da)), primitive(compress(db)));
    let g = heuristic_gcd(&ca, &cb).unwrap_or_else(|| prs_gcd(&ca, &cb));
    let mut out = vec![BigInt::zero(); (g.len() - 1) * d + 1];
    for (i, c) in g.into_iter().enumerate() {
        out[i * d] = c;
    }
    VPoly::from_dense(0, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> VPoly {
        VPoly::from_q_coeffs(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = &qp(&[-1, 0, 1]) * &qp(&[1, 1, 1]); // (q^2-1)(q^2+q+1)
        let b = &qp(&[-1, 1]) * &qp(&[1, 0, 1]); // (q-1)(q^2+1)
        assert_eq!(gcd(&a, &b), qp(&[-1, 1]));
        assert_eq!(gcd(&a.shift(-6), &b.shift(3)), qp(&[-1, 1]));
    }

    #[test]
    fn gcd_ignores_content() {
        let a = qp(&[2, 2]);
        let b = qp(&[-3, 0, 3]);
        assert_eq!(gcd(&a, &b), qp(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = qp(&[-1, 0, 0, 1]);
        assert_eq!(exact_div(&a, &qp(&[-1, 1])), Some(qp(&[1, 1, 1])));
        assert_eq!(exact_div(&a, &qp(&[1, 1])), None);
        assert_eq!(exact_div(&qp(&[2, 4]).shift(1), &VPoly::monomial(2, 1)), Some(qp(&[1, 2])));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let a = &(&qp(&[1, 3, -2, 5]) * &qp(&[7, 0, 1])) * &VPoly::from_terms([(0, 1), (1, -1), (3, 2)]);
        let b = &qp(&[7, 0, 1]) * &VPoly::from_terms([(0, 1), (1, -1), (3, 2)]);
        let h = heuristic_gcd(a.dense(), b.dense()).unwrap();
        assert_eq!(h, prs_gcd(a.dense(), b.dense()));
    }
}
