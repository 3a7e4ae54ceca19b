//! Point counts of quiver moduli, Grassmannians and flags over moduli.
//!
//! The semistable characters are obtained by inverting the Harder-Narasimhan
//! identity with a memoized recursion over sub-dimension vectors. The literal
//! alternating sum over decompositions is kept for cross-checks on small cases.

mod engine;
mod transfer;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{PolyClass, QRat, VPoly};
use crate::quiver::{DimVector, Quiver, Slope};
use crate::series::{char_integral_delta_t, vectors_up_to, GradedSeries, TwistRule};

use engine::Engine;
pub use transfer::transfer_matrix_grassmannian;

/// Which integration map is applied to the semistable characteristic function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Character {
    /// `r_a t^a`.
    Single,
    /// Keys `(b, c)` with `c` the subrepresentation.
    Double,
    /// Keys `(a_t, ..., a_1)`, top quotient first.
    Fold(usize),
}

impl Character {
    pub fn arity(&self) -> usize {
        match self {
            Character::Single => 1,
            Character::Double => 2,
            Character::Fold(t) => *t,
        }
    }
}

/// A semistable counting problem.
#[derive(Debug, Clone)]
pub struct HNProblem {
    pub quiver: Quiver,
    pub slope: Slope,
    pub target: DimVector,
    pub character: Character,
}

/// A count `raw = r^ss` together with `(q - 1) raw` when that is a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub raw: QRat,
    pub normalized: Option<VPoly>,
    pub coprime: bool,
    /// Whether every coefficient of `normalized` is nonnegative.
    pub nonneg: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct CountDoc {
    raw: String,
    normalized: Option<String>,
    coprime: bool,
    nonneg: Option<bool>,
}

impl CountResult {
    pub fn from_raw(raw: QRat, coprime: bool) -> Self {
        let norm = raw.mul_vpoly(&VPoly::from_q_coeffs(&[-1, 1]));
        let normalized = match norm.classify() {
            PolyClass::NotPolynomial => None,
            _ => Some(norm.numer().clone()),
        };
        let nonneg = normalized.as_ref().map(|p| p.terms().all(|(_, c)| c.sign() != num_bigint::Sign::Minus));
        CountResult { raw, normalized, coprime, nonneg }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CountDoc {
            raw: self.raw.to_string(),
            normalized: self.normalized.as_ref().map(VPoly::to_string),
            coprime: self.coprime,
            nonneg: self.nonneg,
        })
        .unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let d: CountDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        let raw: QRat = d.raw.parse()?;
        let normalized = match d.normalized {
            Some(s) => {
                let p: QRat = s.parse()?;
                Some(p.as_vpoly().cloned().ok_or(Error::NotPolynomial(s))?)
            }
            None => None,
        };
        Ok(CountResult { raw, normalized, coprime: d.coprime, nonneg: d.nonneg })
    }
}

fn check_len(q: &Quiver, a: &DimVector) -> Result<()> {
    if a.len() != q.num_vertices() {
        return Err(Error::DimensionMismatch(format!("dimension vector {a} on {} vertices", q.num_vertices())));
    }
    Ok(())
}

fn check_slope(q: &Quiver, mu: &Slope) -> Result<()> {
    if mu.num_vertices() != q.num_vertices() {
        return Err(Error::DimensionMismatch("slope and quiver sizes differ".into()));
    }
    Ok(())
}

/// Value of the semistable character at a single key (slots top quotient first).
fn semistable_coefficient(q: &Quiver, mu: &Slope, key_parts: &[DimVector]) -> Result<QRat> {
    check_slope(q, mu)?;
    for p in key_parts {
        check_len(q, p)?;
    }
    let total = key_parts.iter().fold(DimVector::zero(q.num_vertices()), |acc, p| acc.add(p));
    if total.is_zero() {
        return Err(Error::InvalidArgument("dimension vector must be nonzero".into()));
    }
    let key: Vec<u32> = key_parts.iter().flat_map(|p| p.0.iter().copied()).collect();
    let mut eng = Engine::new(q, mu, key_parts.len(), Some(key.clone()));
    let piece = eng.semistable(&total);
    let num = piece.get(&key).cloned().unwrap_or_default();
    QRat::new(num, q.gl_alpha_order(&total))
}

/// `r^ss_a`: semistable points of `Rep_a(Q)` divided by `|GL_a|`.
pub fn moduli_count(q: &Quiver, a: &DimVector, mu: &Slope) -> Result<CountResult> {
    let raw = semistable_coefficient(q, mu, std::slice::from_ref(a))?;
    Ok(CountResult::from_raw(raw, mu.coprime_to(a)?))
}

/// `r^ss_{b,c}` with `b = a - c`: the sum over semistable `M` of `|Gr_c(M)| / a_M`.
pub fn grassmannian_moduli_count(q: &Quiver, a: &DimVector, c: &DimVector, mu: &Slope) -> Result<CountResult> {
    check_len(q, a)?;
    check_len(q, c)?;
    let b = a.checked_sub(c).ok_or_else(|| Error::InvalidArgument(format!("gamma = {c} is not below alpha = {a}")))?;
    let raw = semistable_coefficient(q, mu, &[b, c.clone()])?;
    Ok(CountResult::from_raw(raw, mu.coprime_to(a)?))
}

/// The sum over semistable `M` of `|Fl(M)| / a_M` for flags with successive
/// subquotients `parts[0]` (bottom) through `parts[t-1]` (top).
pub fn flag_moduli_count(q: &Quiver, parts: &[DimVector], mu: &Slope) -> Result<CountResult> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("a flag needs at least one part".into()));
    }
    let slots: Vec<DimVector> = parts.iter().rev().cloned().collect();
    let raw = semistable_coefficient(q, mu, &slots)?;
    let total = parts.iter().fold(DimVector::zero(q.num_vertices()), |acc, p| acc.add(p));
    Ok(CountResult::from_raw(raw, mu.coprime_to(&total)?))
}

/// All semistable pieces up to total dimension `truncation`, in the `t`-fold algebra
/// of the problem's character (the target is ignored).
pub fn semistable_series(problem: &HNProblem, truncation: u32) -> Result<GradedSeries> {
    let q = &problem.quiver;
    check_slope(q, &problem.slope)?;
    let t = problem.character.arity();
    let rule = if t == 1 { TwistRule::euler(q) } else { TwistRule::flag(q, t) };
    let mut eng = Engine::new(q, &problem.slope, t, None);
    let mut out = GradedSeries::zero(rule, truncation as i64);
    for a in vectors_up_to(q.num_vertices(), truncation) {
        if a.is_zero() {
            out.add_term(vec![0; q.num_vertices() * t], QRat::one())?;
            continue;
        }
        let gl = q.gl_alpha_order(&a);
        for (k, c) in eng.semistable(&a).iter() {
            let key = k.iter().map(|&x| x as i64).collect();
            out.add_term(key, QRat::new(c.clone(), gl.clone())?)?;
        }
        debug_assert!(eng.semistable(&a).keys().all(|k| eng.total_of(k) == a));
    }
    Ok(out)
}

/// Semistable pieces of a fixed slope `mu0`, plus the constant 1, under the Euler rule.
pub fn fixed_slope_series(q: &Quiver, mu: &Slope, mu0: crate::quiver::SlopeValue, truncation: u32) -> Result<GradedSeries> {
    check_slope(q, mu)?;
    let mut eng = Engine::new(q, mu, 1, None);
    let mut out = GradedSeries::one(TwistRule::euler(q), truncation as i64);
    for a in vectors_up_to(q.num_vertices(), truncation) {
        if a.is_zero() || mu.value(&a)? != mu0 {
            continue;
        }
        if let Some(c) = eng.semistable(&a).get(&a.0) {
            out.add_term(a.to_i64(), QRat::new(c.clone(), q.gl_alpha_order(&a))?)?;
        }
    }
    Ok(out)
}

/// The semistable character at `problem.target` by the literal alternating sum over
/// decompositions `a_1 + ... + a_s = a` with `mu(a_1 + ... + a_k) < mu(a)` for `k < s`.
/// Exponential; intended for small cross-checks.
pub fn alternating_sum(problem: &HNProblem) -> Result<GradedSeries> {
    let q = &problem.quiver;
    let a = &problem.target;
    check_len(q, a)?;
    let t = problem.character.arity();
    let m = problem.slope.value(a)?;
    let trunc = a.total() as i64;
    let rule = TwistRule::flag(q, t);
    let mut total = GradedSeries::zero(rule.clone(), trunc);
    // stack of (remaining, partial product, number of parts)
    let mut stack = vec![(a.clone(), GradedSeries::one(rule, trunc), 0usize)];
    while let Some((rest, prod, s)) = stack.pop() {
        for a1 in rest.sub_vectors() {
            if a1.is_zero() {
                continue;
            }
            let next = prod.mul(&char_integral_delta_t(q, &a1, t)?.truncate(trunc))?;
            let remaining = rest.checked_sub(&a1).unwrap();
            if remaining.is_zero() {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                total = total.add(&next.scale(&QRat::from_int(sign)))?;
            } else {
                let partial = a.checked_sub(&remaining).unwrap();
                if problem.slope.value(&partial)? < m {
                    stack.push((remaining, next, s + 1));
                }
            }
        }
    }
    Ok(total)
}
