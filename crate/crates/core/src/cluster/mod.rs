//! Quantum cluster variables with principal coefficients.
//!
//! Elements live in the quantum torus on `x^a y^b` with
//! `(x^a1 y^b1)(x^a2 y^b2) = q^((b1.a2 - a1.b2)/2) q^((b1 B b2)/2) x^(a1+a2) y^(b1+b2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::count::grassmannian_moduli_count;
use crate::error::{Error, Result};
use crate::exactq::{eval_qrat_sqrt, QRat, Surd, VPoly};
use crate::oracle::{gr_count, FqRep, Oracle};
use crate::quiver::{DimVector, Quiver, Slope, Weight};
use crate::series::{GradedSeries, Key, TwistRule};

/// Whether `-B~ Lambda = (I, 0)` for an `n x 2n` matrix `B~` and a `2n x 2n` matrix `Lambda`.
pub fn is_unitally_compatible(b_ext: &[Vec<i64>], lambda: &[Vec<i64>]) -> bool {
    let n = b_ext.len();
    if lambda.len() != 2 * n || b_ext.iter().chain(lambda).any(|r| r.len() != 2 * n) {
        return false;
    }
    (0..n).all(|i| {
        (0..2 * n).all(|j| {
            let s: i64 = (0..2 * n).map(|k| b_ext[i][k] * lambda[k][j]).sum();
            -s == i64::from(i == j)
        })
    })
}

/// The principally extended frame of an acyclic quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalFrame {
    quiver: Quiver,
    euler: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
}

impl PrincipalFrame {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::InvalidArgument("cluster frames need an acyclic quiver".into()));
        }
        let frame = PrincipalFrame { quiver: quiver.clone(), euler: quiver.euler_matrix(), b: quiver.b_matrix() };
        debug_assert!(is_unitally_compatible(&frame.b_extended(), &frame.lambda()));
        Ok(frame)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn b_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    fn n(&self) -> usize {
        self.quiver.num_vertices()
    }

    /// `(B, I)`.
    pub fn b_extended(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n).map(|i| self.b[i].iter().copied().chain((0..n).map(|j| i64::from(i == j))).collect()).collect()
    }

    /// `[[0, I], [-I, -B]]`.
    pub fn lambda(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut l = vec![vec![0i64; 2 * n]; 2 * n];
        for i in 0..n {
            l[i][n + i] = 1;
            l[n + i][i] = -1;
            for j in 0..n {
                l[n + i][n + j] = -self.b[i][j];
            }
        }
        l
    }

    /// `g(a) = -a E^T`.
    pub fn g(&self, a: &DimVector) -> Vec<i64> {
        (0..self.n()).map(|i| -(0..self.n()).map(|j| a.0[j] as i64 * self.euler[i][j]).sum::<i64>()).collect()
    }

    /// `phi(c) = c B`.
    pub fn phi(&self, c: &DimVector) -> Vec<i64> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| c.0[j] as i64 * self.b[j][i]).sum()).collect()
    }

    pub fn rule(&self) -> TwistRule {
        TwistRule::principal(&self.quiver)
    }
}

/// An element of the principal quantum torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterElement {
    series: GradedSeries,
    names: Vec<String>,
}

impl ClusterElement {
    pub fn one(frame: &PrincipalFrame) -> Self {
        ClusterElement { series: GradedSeries::one(frame.rule(), i64::MAX), names: frame.quiver.names().to_vec() }
    }

    pub fn series(&self) -> &GradedSeries {
        &self.series
    }

    /// Terms as `((x-exponent, y-exponent), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((&[i64], &[i64]), &QRat)> {
        let n = self.names.len();
        self.series.terms().map(move |(k, c)| (k.split_at(n), c))
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn scale(&self, c: &QRat) -> Self {
        ClusterElement { series: self.series.scale(c), names: self.names.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(ClusterElement { series: self.series.add(&other.series)?, names: self.names.clone() })
    }

    /// Every coefficient at `v = sqrt(q0)`.
    pub fn eval_sqrt(&self, q0: u64) -> Result<BTreeMap<Key, Surd>> {
        let mut out = BTreeMap::new();
        for (k, c) in self.series.terms() {
            let s = eval_qrat_sqrt(c, q0)?;
            if !s.is_zero() {
                out.insert(k.clone(), s);
            }
        }
        Ok(out)
    }

    /// `y -> 1`, `v -> 1`: a Laurent polynomial in `x`.
    pub fn classical(&self) -> Result<BTreeMap<Vec<i64>, BigRational>> {
        let mut out: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        for ((x, _), c) in self.terms() {
            let val = c.eval_v(&BigInt::from(1))?;
            *out.entry(x.to_vec()).or_default() += val;
        }
        out.retain(|_, c| *c != BigRational::default());
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|((x, y), c)| serde_json::json!({ "x": x, "y": y, "coeff": c.to_string() }))
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

fn monomial(names: &[String], var: &str, e: &[i64]) -> Vec<String> {
    e.iter()
        .zip(names)
        .filter(|(&k, _)| k != 0)
        .map(|(&k, nm)| if k == 1 { format!("{var}_{nm}") } else { format!("{var}_{nm}^{k}") })
        .collect()
}

impl fmt::Display for ClusterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((x, y), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !c.is_one() || (x.iter().all(|&e| e == 0) && y.iter().all(|&e| e == 0)) {
                factors.push(format!("({c})"));
            }
            factors.extend(monomial(&self.names, "x", x));
            factors.extend(monomial(&self.names, "y", y));
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Grassmannian counts `gamma -> |Gr_gamma(T)|` of a representation of dimension `a`.
pub type GrCounts = BTreeMap<DimVector, VPoly>;

/// `X(T) = sum_gamma <gamma, a - gamma>^(-1/2) |Gr_gamma(T)| x^(g(a) - phi(gamma)) y^(a - gamma)`.
pub fn cluster_variable(frame: &PrincipalFrame, a: &DimVector, grc: &GrCounts) -> Result<ClusterElement> {
    let q = &frame.quiver;
    if a.len() != q.num_vertices() {
        return Err(Error::DimensionMismatch(format!("{a} on {} vertices", q.num_vertices())));
    }
    let mut s = GradedSeries::zero(frame.rule(), i64::MAX);
    let g = frame.g(a);
    for c in a.sub_vectors() {
        let count = grc.get(&c).ok_or_else(|| Error::MissingEntry(c.to_string()))?;
        if count.is_zero() {
            continue;
        }
        let rest = a.checked_sub(&c).unwrap();
        let e = q.euler_additive(&c, &rest)?;
        let x: Vec<i64> = g.iter().zip(frame.phi(&c)).map(|(gi, pi)| gi - pi).collect();
        let key: Key = x.into_iter().chain(rest.to_i64()).collect();
        s.add_term(key, QRat::from_vpoly(count.clone()).shift(-e))?;
    }
    Ok(ClusterElement { series: s, names: q.names().to_vec() })
}

/// Product in the quantum torus.
pub fn cluster_product(x: &ClusterElement, y: &ClusterElement) -> Result<ClusterElement> {
    Ok(ClusterElement { series: x.series.mul(&y.series)?, names: x.names.clone() })
}

/// `|Gr_gamma(T)|` for an explicit representation, as constants.
pub fn grc_from_oracle(t: &FqRep) -> Result<GrCounts> {
    let mut out = GrCounts::new();
    for c in t.dim().sub_vectors() {
        out.insert(c.clone(), VPoly::constant(BigInt::from(gr_count(t, &c)?)));
    }
    Ok(out)
}

/// `|Gr_gamma(T)|` as polynomials in `q` for the rigid `T` that is the unique
/// stable representation of dimension `a` for the weight `sigma`.
pub fn grc_from_count(q: &Quiver, a: &DimVector, sigma: &Weight) -> Result<GrCounts> {
    let mu = Slope::new(sigma.clone(), Weight(vec![1; q.num_vertices()]))?;
    if !mu.coprime_to(a)? {
        return Err(Error::InvalidArgument(format!("weight {:?} is not coprime to {a}", sigma.0)));
    }
    let mut out = GrCounts::new();
    for c in a.sub_vectors() {
        let r = grassmannian_moduli_count(q, a, &c, &mu)?;
        let p = r.normalized.ok_or_else(|| Error::NotPolynomial(r.raw.to_string()))?;
        if c.is_zero() && !p.is_one() {
            return Err(Error::InvalidArgument(format!("weight {:?} does not isolate a single stable class of dimension {a}", sigma.0)));
        }
        out.insert(c, p);
    }
    Ok(out)
}

/// Check `X(U) X(V) = sum_W |Ext(U,V)_W| / |Ext(U,V)| X(W)` with every coefficient
/// evaluated at `v = sqrt(p)`.
pub fn verify_cluster_multiplication(frame: &PrincipalFrame, oracle: &Oracle, u: &FqRep, v: &FqRep) -> Result<bool> {
    let p = oracle.field().p() as u64;
    let xu = cluster_variable(frame, u.dim(), &grc_from_oracle(u)?)?;
    let xv = cluster_variable(frame, v.dim(), &grc_from_oracle(v)?)?;
    let lhs = cluster_product(&xu, &xv)?;
    let dist = oracle.ext_middle_distribution(u, v)?;
    let total: u128 = dist.iter().map(|d| d.1).sum();
    let mut rhs = ClusterElement { series: GradedSeries::zero(frame.rule(), i64::MAX), names: xu.names.clone() };
    for (w, k) in dist {
        let xw = cluster_variable(frame, w.dim(), &grc_from_oracle(&w)?)?;
        let c = BigRational::new(BigInt::from(k), BigInt::from(total));
        rhs = rhs.add(&xw.scale(&QRat::from_rational(&c)))?;
    }
    Ok(lhs.eval_sqrt(p)? == rhs.eval_sqrt(p)?)
}

#[cfg(test)]
mod tests;
