//! Plethystic `Exp` and `Log` on untwisted series, and the moduli generating series.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::count::fixed_slope_series;
use crate::error::{Error, Result};
use crate::exactq::{PolyClass, QRat, VPoly};
use crate::quiver::{DimVector, Quiver, Slope, SlopeValue};
use crate::series::{GradedSeries, RuleKind, TwistRule};

fn check_untwisted(f: &GradedSeries) -> Result<()> {
    if f.rule().kind() != RuleKind::Untwisted {
        return Err(Error::RuleMismatch(f.rule().id(), "untwisted".into()));
    }
    Ok(())
}

fn zero_key(f: &GradedSeries) -> Vec<i64> {
    vec![0; f.rule().key_len()]
}

/// The classical Mobius function.
pub fn mobius(n: u32) -> i32 {
    let (mut n, mut sign, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn rational(n: i64, d: i64) -> QRat {
    QRat::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// `exp(g)` for `g` without constant term.
fn exp_series(g: &GradedSeries) -> Result<GradedSeries> {
    let mut acc = GradedSeries::one(g.rule().clone(), g.truncation());
    let mut power = acc.clone();
    for n in 1..=g.truncation().max(0) {
        power = power.mul(g)?.scale(&rational(1, n));
        if power.is_empty() {
            break;
        }
        acc = acc.add(&power)?;
    }
    Ok(acc)
}

/// `log(1 + h)` for `h` without constant term.
fn log_series(h: &GradedSeries) -> Result<GradedSeries> {
    let mut acc = GradedSeries::zero(h.rule().clone(), h.truncation());
    let mut power = GradedSeries::one(h.rule().clone(), h.truncation());
    for n in 1..=h.truncation().max(0) {
        power = power.mul(h)?;
        if power.is_empty() {
            break;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&rational(sign, n)))?;
    }
    Ok(acc)
}

/// `Exp(f) = exp(sum_k psi_k(f) / k)`; `f` must have zero constant term.
pub fn exp_op(f: &GradedSeries) -> Result<GradedSeries> {
    check_untwisted(f)?;
    if !f.coeff(&zero_key(f)).is_zero() {
        return Err(Error::InvalidArgument("Exp needs a series without constant term".into()));
    }
    let mut g = GradedSeries::zero(f.rule().clone(), f.truncation());
    for k in 1..=f.truncation().max(0) {
        g = g.add(&f.adams(k as u32)?.scale(&rational(1, k)))?;
    }
    exp_series(&g)
}

/// `Log(f) = sum_k mobius(k)/k psi_k(log f)`; `f` must have constant term 1.
pub fn log_op(f: &GradedSeries) -> Result<GradedSeries> {
    check_untwisted(f)?;
    let z = zero_key(f);
    if !f.coeff(&z).is_one() {
        return Err(Error::InvalidArgument("Log needs a series with constant term 1".into()));
    }
    let h = f.sub(&GradedSeries::one(f.rule().clone(), f.truncation()))?;
    let l = log_series(&h)?;
    let mut out = GradedSeries::zero(f.rule().clone(), f.truncation());
    for k in 1..=f.truncation().max(0) {
        let m = mobius(k as u32);
        if m != 0 {
            out = out.add(&l.adams(k as u32)?.scale(&rational(m as i64, k)))?;
        }
    }
    Ok(out)
}

/// `R`, `A` and `M` for one slope.
#[derive(Debug, Clone)]
pub struct ModuliSeries {
    /// `1 + sum_{mu(a) = mu0} r^ss_a x^a` under the Euler rule.
    pub r: GradedSeries,
    /// `(1 - q) Log(R^(-1))`, untwisted.
    pub a: GradedSeries,
    /// `Exp(A)`, untwisted.
    pub m: GradedSeries,
}

impl ModuliSeries {
    fn poly(s: &GradedSeries, d: &DimVector) -> Option<VPoly> {
        let c = s.coeff(&d.to_i64());
        if c.is_zero() {
            return Some(VPoly::zero());
        }
        c.as_vpoly().cloned()
    }

    pub fn a_coeff(&self, d: &DimVector) -> VPoly {
        Self::poly(&self.a, d).expect("checked polynomial")
    }

    pub fn m_coeff(&self, d: &DimVector) -> VPoly {
        Self::poly(&self.m, d).expect("checked polynomial")
    }

    /// Rows `(a, r^ss_a, a_a, m_a)` for every `a` with a nonzero entry.
    pub fn table(&self) -> Vec<(Vec<i64>, QRat, VPoly, VPoly)> {
        let mut keys: Vec<Vec<i64>> = self.r.terms().chain(self.a.terms()).chain(self.m.terms()).map(|(k, _)| k.clone()).collect();
        keys.sort_by_key(|k| (k.iter().sum::<i64>(), k.clone()));
        keys.dedup();
        keys.into_iter()
            .filter(|k| k.iter().any(|&x| x != 0))
            .map(|k| {
                let d = DimVector(k.iter().map(|&x| x as u32).collect());
                (k.clone(), self.r.coeff(&k), self.a_coeff(&d), self.m_coeff(&d))
            })
            .collect()
    }
}

/// Solve `R Exp(A / (1 - q)) = 1` for `A` and set `M = Exp(A)`.
pub fn moduli_series(q: &Quiver, mu: &Slope, mu0: SlopeValue, truncation: u32) -> Result<ModuliSeries> {
    let r = fixed_slope_series(q, mu, mu0, truncation)?;
    let untwisted = TwistRule::untwisted(q.num_vertices(), 1);
    let inv = r.inverse()?.with_rule(untwisted)?;
    let one_minus_q = VPoly::from_q_coeffs(&[1, -1]);
    let a = log_op(&inv)?.map_coeffs(|_, c| c.mul_vpoly(&one_minus_q));
    for (k, c) in a.terms() {
        if c.classify() == PolyClass::NotPolynomial {
            return Err(Error::NotPolynomial(format!("a_{k:?} = {c}")));
        }
    }
    let m = exp_op(&a)?;
    for (k, c) in m.terms() {
        if c.classify() == PolyClass::NotPolynomial {
            return Err(Error::NotPolynomial(format!("m_{k:?} = {c}")));
        }
    }
    Ok(ModuliSeries { r, a, m })
}

/// `m` at `q = 1`.
pub fn euler_characteristic_check(m: &VPoly) -> Result<BigInt> {
    let v = QRat::from_vpoly(m.clone()).eval_at(1)?;
    Ok(v.to_integer())
}
