//! Quantum exponentials and the Dynkin quantum dilogarithm identities.
//!
//! All products are taken under the antisymmetric rule
//! `t^a t^b = q^((<b,a> - <a,b>)/2) t^(a+b)`.

use crate::error::{Error, Result};
use crate::exactq::{gl_order, quantum_factorial, QRat, VPoly};
use crate::quiver::{dynkin_indecomposables, dynkin_type, DimVector, Quiver};
use crate::series::{r_alpha, vectors_up_to, GradedSeries, TwistRule};

/// `E(x^d) = sum_n (q^(1/2) / (q - 1))^n x^(n d) / [n]!` up to total degree `truncation`.
pub fn quantum_exp(q: &Quiver, d: &DimVector, truncation: i64) -> Result<GradedSeries> {
    if d.is_zero() {
        return Err(Error::InvalidArgument("quantum exponential of the zero vector".into()));
    }
    if d.len() != q.num_vertices() {
        return Err(Error::DimensionMismatch(format!("{d} on {} vertices", q.num_vertices())));
    }
    let mut s = GradedSeries::zero(TwistRule::antisymmetric(q), truncation);
    let step = d.total() as i64;
    let mut n = 0u32;
    while n as i64 * step <= truncation {
        // (q - 1)^n [n]! = prod_{k <= n} (q^k - 1)
        let den = (1..=n).fold(VPoly::one(), |acc, k| &acc * &(&VPoly::q_pow(k as i64) - &VPoly::one()));
        debug_assert_eq!(den, &VPoly::from_q_coeffs(&[-1, 1]).pow(n) * &quantum_factorial(n));
        s.add_term(d.scale(n).to_i64(), QRat::new(VPoly::monomial(1, n as i64), den)?)?;
        n += 1;
    }
    Ok(s)
}

/// Ordered product of quantum exponentials.
pub fn dilog_product(q: &Quiver, order: &[DimVector], truncation: i64) -> Result<GradedSeries> {
    let mut acc = GradedSeries::one(TwistRule::antisymmetric(q), truncation);
    for d in order {
        acc = acc.mul(&quantum_exp(q, d, truncation)?)?;
    }
    Ok(acc)
}

/// `sum_a <a,a>^(1/2) r_a t^a`: the image of the full characteristic function.
pub fn direct_series(q: &Quiver, truncation: i64) -> Result<GradedSeries> {
    let mut s = GradedSeries::zero(TwistRule::antisymmetric(q), truncation);
    for a in vectors_up_to(q.num_vertices(), truncation as u32) {
        let e = q.euler_additive(&a, &a)?;
        s.add_term(a.to_i64(), r_alpha(q, &a)?.shift(e))?;
    }
    debug_assert!(s.coeff(&vec![0; q.num_vertices()]).is_one());
    debug_assert_eq!(gl_order(0), VPoly::one());
    Ok(s)
}

/// Simple dimension vectors in a topological order of the quiver (sources first).
pub fn simple_order(q: &Quiver) -> Result<Vec<DimVector>> {
    let n = q.num_vertices();
    let topo = q.topological_order().ok_or_else(|| Error::NotDynkin("quiver has oriented cycles".into()))?;
    Ok(topo.into_iter().map(|v| DimVector::unit(n, v)).collect())
}

/// Outcome of a dilogarithm check.
#[derive(Debug, Clone)]
pub struct DilogReport {
    pub simple_side: GradedSeries,
    pub root_side: GradedSeries,
    pub direct: GradedSeries,
    /// First key where two of the three series differ.
    pub first_difference: Option<(Vec<i64>, QRat, QRat)>,
}

impl DilogReport {
    pub fn passed(&self) -> bool {
        self.first_difference.is_none()
    }
}

fn first_difference(a: &GradedSeries, b: &GradedSeries) -> Option<(Vec<i64>, QRat, QRat)> {
    let mut keys: Vec<&Vec<i64>> = a.terms().chain(b.terms()).map(|(k, _)| k).collect();
    keys.sort_by_key(|k| (k.iter().sum::<i64>(), (*k).clone()));
    keys.into_iter().find(|k| a.coeff(k) != b.coeff(k)).map(|k| (k.clone(), a.coeff(k), b.coeff(k)))
}

/// Compare the product over simples, the product over indecomposables and the direct series.
pub fn verify_with_order(q: &Quiver, simples: &[DimVector], truncation: i64) -> Result<DilogReport> {
    dynkin_type(q)?;
    let roots = dynkin_indecomposables(q)?;
    let simple_side = dilog_product(q, simples, truncation)?;
    let root_side = dilog_product(q, &roots, truncation)?;
    let direct = direct_series(q, truncation)?;
    let first = first_difference(&simple_side, &root_side).or_else(|| first_difference(&root_side, &direct));
    Ok(DilogReport { simple_side, root_side, direct, first_difference: first })
}

/// The Dynkin identity with simples in the order of `simple_order`.
pub fn verify_dynkin_identity(q: &Quiver, truncation: i64) -> Result<DilogReport> {
    verify_with_order(q, &simple_order(q)?, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::parse_qrat;
    use crate::quiver::{dynkin_quiver, DynkinType};

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn low_degree_terms() {
        let q = Quiver::a_n(2);
        let e = quantum_exp(&q, &dv(&[1, 1]), 6).unwrap();
        assert!(e.coeff(&[0, 0]).is_one());
        assert_eq!(e.coeff(&[1, 1]), parse_qrat("q^(1/2)/(q-1)").unwrap());
        assert_eq!(e.len(), 4);
        assert!(quantum_exp(&q, &dv(&[0, 0]), 6).is_err());
    }

    #[test]
    fn a1_matches_integral() {
        let q = Quiver::a_n(1);
        let e = quantum_exp(&q, &dv(&[1]), 6).unwrap();
        assert_eq!(e, direct_series(&q, 6).unwrap());
        assert!(verify_dynkin_identity(&q, 6).unwrap().passed());
    }

    #[test]
    fn exp_recursion() {
        // coefficient ratio c_n / c_(n-1) = q^(1/2) / (q^n - 1)
        let q = Quiver::a_n(1);
        let e = quantum_exp(&q, &dv(&[1]), 6).unwrap();
        for n in 1..=6i64 {
            let ratio = (&e.coeff(&[n]) / &e.coeff(&[n - 1])).unwrap();
            let expect = QRat::new(VPoly::monomial(1, 1), &VPoly::q_pow(n) - &VPoly::one()).unwrap();
            assert_eq!(ratio, expect);
        }
    }

    #[test]
    fn pentagon_both_orientations() {
        for q in [Quiver::a_n(2), Quiver::new(2, vec![(1, 0)]).unwrap()] {
            let r = verify_dynkin_identity(&q, 6).unwrap();
            assert!(r.passed(), "{:?}", r.first_difference);
            let mut reversed = simple_order(&q).unwrap();
            reversed.reverse();
            assert!(!verify_with_order(&q, &reversed, 6).unwrap().passed());
        }
    }

    #[test]
    fn a3_and_d4() {
        assert!(verify_dynkin_identity(&Quiver::a_n(3), 5).unwrap().passed());
        assert!(verify_dynkin_identity(&dynkin_quiver(DynkinType::D, 4).unwrap(), 4).unwrap().passed());
        assert!(verify_dynkin_identity(&Quiver::kronecker(2), 4).is_err());
    }
}
