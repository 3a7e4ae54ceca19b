//! Images of characteristic functions under the integration maps.

use super::{GradedSeries, Key, TwistRule};
use crate::error::Result;
use crate::exactq::QRat;
use crate::quiver::{DimVector, Quiver};

/// `r_a = |Rep_a(Q)| / |GL_a|`.
pub fn r_alpha(q: &Quiver, a: &DimVector) -> Result<QRat> {
    QRat::new(q.rep_space_order(a)?, q.gl_alpha_order(a))
}

/// `r_{b,c} = <b,c>^(-1) r_b r_c`.
pub fn r_beta_gamma(q: &Quiver, b: &DimVector, c: &DimVector) -> Result<QRat> {
    r_composition(q, &[b.clone(), c.clone()])
}

/// `prod_{p < p'} <a_p, a_p'>^(-1) prod_p r_{a_p}` for parts listed top quotient first.
pub fn r_composition(q: &Quiver, parts: &[DimVector]) -> Result<QRat> {
    let mut e = 0i64;
    let mut acc = QRat::one();
    for (p, a) in parts.iter().enumerate() {
        for b in &parts[p + 1..] {
            e += q.euler_additive(a, b)?;
        }
        acc = &acc * &r_alpha(q, a)?;
    }
    Ok(acc.shift(-2 * e))
}

/// The single term `r_a t^a` under the Euler rule.
pub fn char_integral(q: &Quiver, a: &DimVector) -> Result<GradedSeries> {
    GradedSeries::monomial(TwistRule::euler(q), a.total() as i64, to_key(&[a.clone()]), r_alpha(q, a)?)
}

/// `sum_{|a| <= truncation} r_a t^a`.
pub fn char_integral_series(q: &Quiver, truncation: i64) -> Result<GradedSeries> {
    let mut s = GradedSeries::zero(TwistRule::euler(q), truncation);
    for a in vectors_up_to(q.num_vertices(), truncation as u32) {
        s.add_term(to_key(&[a.clone()]), r_alpha(q, &a)?)?;
    }
    Ok(s)
}

/// `sum_{b + c = a} r_{b,c} x^b y^c`, keys `(b, c)`.
pub fn char_integral_delta(q: &Quiver, a: &DimVector) -> Result<GradedSeries> {
    char_integral_delta_t(q, a, 2)
}

/// Sum over compositions `a = a_t + ... + a_1` (listed top quotient first) of
/// `r_composition * x_t^(a_t) ... x_1^(a_1)` under the `t`-fold rule.
pub fn char_integral_delta_t(q: &Quiver, a: &DimVector, t: usize) -> Result<GradedSeries> {
    let mut s = GradedSeries::zero(TwistRule::flag(q, t), a.total() as i64);
    for parts in compositions(a, t) {
        s.add_term(to_key(&parts), r_composition(q, &parts)?)?;
    }
    Ok(s)
}

pub(crate) fn to_key(parts: &[DimVector]) -> Key {
    parts.iter().flat_map(|p| p.0.iter().map(|&x| x as i64)).collect()
}

/// All ordered `t`-tuples of dimension vectors summing to `a`.
pub fn compositions(a: &DimVector, t: usize) -> Vec<Vec<DimVector>> {
    if t == 1 {
        return vec![vec![a.clone()]];
    }
    let mut out = Vec::new();
    for first in a.sub_vectors() {
        let rest = a.checked_sub(&first).unwrap();
        for mut tail in compositions(&rest, t - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// All dimension vectors on `n` vertices with total at most `d`.
pub fn vectors_up_to(n: usize, d: u32) -> Vec<DimVector> {
    let mut out = vec![DimVector::zero(n)];
    for i in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used = v.total();
            for x in 0..=(d - used) {
                let mut w = v.clone();
                w.0[i] = x;
                next.push(w);
            }
        }
        out = next;
    }
    out.sort_by_key(|v| (v.total(), v.clone()));
    out
}
