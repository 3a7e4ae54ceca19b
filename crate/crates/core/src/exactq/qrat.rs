//! Rational functions in `v = q^(1/2)` in canonical reduced form.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{exact_div, gcd};
use super::vpoly::VPoly;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den)` a unit, `den` of minimal exponent 0 with
/// positive leading coefficient, and the integer contents of `num` and `den` coprime.
#[derive(Clone, PartialEq, Eq)]
pub struct QRat {
    num: VPoly,
    den: VPoly,
}

/// Shape of a rational function after reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyClass {
    /// Polynomial in `q^(1/2)` with nonnegative integer coefficients and no negative powers.
    NonnegPolynomial,
    /// Polynomial with at least one negative coefficient.
    SignedPolynomial,
    NotPolynomial,
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: VPoly::zero(), den: VPoly::one() }
    }

    pub fn one() -> Self {
        QRat { num: VPoly::one(), den: VPoly::one() }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        QRat { num: VPoly::constant(c), den: VPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts_reduced(VPoly::constant(r.numer().clone()), VPoly::constant(r.denom().clone()))
    }

    pub fn q() -> Self {
        Self::from_vpoly(VPoly::q())
    }

    pub fn v() -> Self {
        Self::from_vpoly(VPoly::v())
    }

    /// `v^k = q^(k/2)`.
    pub fn v_pow(k: i64) -> Self {
        Self::from_vpoly(VPoly::monomial(1, k))
    }

    pub fn from_vpoly(p: VPoly) -> Self {
        QRat { num: p, den: VPoly::one() }
    }

    /// Build `num / den`, reducing to canonical form.
    pub fn new(num: VPoly, den: VPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_monomial() || num.is_monomial() {
            return Ok(Self::from_parts_reduced(num, den));
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::from_parts_reduced(num, den));
        }
        let n = exact_div(&num, &g).expect("gcd divides numerator");
        let d = exact_div(&den, &g).expect("gcd divides denominator");
        Ok(Self::from_parts_reduced(n, d))
    }

    /// Normalize units given coprime `num`, `den` (up to monomials and integers).
    fn from_parts_reduced(mut num: VPoly, mut den: VPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let s = den.low_exp();
        den.shift_in_place(-s);
        num.shift_in_place(-s);
        let cn = num.content();
        let cd = den.content();
        let mut g = cn.gcd(&cd);
        if den.leading_coeff().unwrap().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            num = num.div_scalar_exact(&g);
            den = den.div_scalar_exact(&g);
        }
        QRat { num, den }
    }

    pub fn numer(&self) -> &VPoly {
        &self.num
    }

    pub fn denom(&self) -> &VPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True if the denominator is an integer constant.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// The value as a Laurent polynomial if the denominator is 1.
    pub fn as_vpoly(&self) -> Option<&VPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        QRat { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_parts_reduced(self.num.scale(c), self.den.clone())
    }

    pub fn mul_vpoly(&self, p: &VPoly) -> Self {
        if p.is_monomial() {
            if p.is_zero() {
                return Self::zero();
            }
            let c = p.leading_coeff().unwrap();
            return self.scale_int(c).shift(p.low_exp());
        }
        self * &QRat::from_vpoly(p.clone())
    }

    /// Divide by a nonzero Laurent polynomial.
    pub fn div_vpoly(&self, p: &VPoly) -> Result<Self> {
        self / &QRat::from_vpoly(p.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts_reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let n = n.unsigned_abs() as u32;
        Ok(QRat { num: base.num.pow(n), den: base.den.pow(n) }.renormalize())
    }

    fn renormalize(self) -> Self {
        Self::from_parts_reduced(self.num, self.den)
    }

    /// `f(v) -> f(v^n)`; preserves canonical form.
    pub fn substitute_power(&self, n: u32) -> Self {
        QRat { num: self.num.substitute_power(n), den: self.den.substitute_power(n) }
    }

    /// `f(v) -> f(-v)`.
    pub fn negate_v(&self) -> Self {
        Self::from_parts_reduced(self.num.negate_v(), self.den.negate_v())
    }

    /// Exact value at `q = q0`; rejects odd powers of `v` and poles.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if !self.num.is_in_q() || !self.den.is_in_q() {
            return Err(Error::HalfIntegerExponent);
        }
        let d = self.den.eval_q(q0)?;
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval_q(q0)? / d)
    }

    /// Exact value at a positive integer `q = q0`.
    pub fn eval_at(&self, q0: u64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(q0)))
    }

    /// Exact value at a prime power `q0 >= 2`.
    pub fn eval_at_prime_power(&self, q0: u64) -> Result<BigRational> {
        if q0 < 2 {
            return Err(Error::InvalidArgument(format!("q0 = {q0} is not a prime power")));
        }
        self.eval_at(q0)
    }

    /// Value at an integer `v = v0`, used for evaluations at `q = v0^2`.
    pub fn eval_v(&self, v0: &BigInt) -> Result<BigRational> {
        let d = self.den.eval_v_int(v0);
        if d.is_zero() {
            return Err(Error::Pole(format!("v = {v0}")));
        }
        Ok(self.num.eval_v_int(v0) / d)
    }

    pub fn classify(&self) -> PolyClass {
        if !self.den.is_one() || self.num.low_exp() < 0 {
            return PolyClass::NotPolynomial;
        }
        if self.num.terms().all(|(_, c)| !c.is_negative()) {
            PolyClass::NonnegPolynomial
        } else {
            PolyClass::SignedPolynomial
        }
    }
}

/// Classify a rational function after canonical reduction.
pub fn is_polynomial_nonneg(f: &QRat) -> PolyClass {
    f.classify()
}

impl Hash for QRat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_impl(a: &QRat, b: &QRat, negate: bool) -> QRat {
    let bn = if negate { -&b.num } else { b.num.clone() };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return QRat { num: bn, den: b.den.clone() };
    }
    if a.den == b.den {
        let num = &a.num + &bn;
        if a.den.is_monomial() {
            return QRat::from_parts_reduced(num, a.den.clone());
        }
        return QRat::new(num, a.den.clone()).unwrap();
    }
    if a.den.is_monomial() && b.den.is_monomial() {
        let (ca, cb) = (a.den.leading_coeff().unwrap(), b.den.leading_coeff().unwrap());
        let l = ca.lcm(cb);
        let num = &a.num.scale(&(&l / ca)) + &bn.scale(&(&l / cb));
        return QRat::from_parts_reduced(num, VPoly::constant(l));
    }
    let g = if a.den.is_monomial() || b.den.is_monomial() { VPoly::one() } else { gcd(&a.den, &b.den) };
    let ad = exact_div(&a.den, &g).unwrap();
    let bd = exact_div(&b.den, &g).unwrap();
    let num = &(&a.num * &bd) + &(&bn * &ad);
    let den = &ad * &b.den;
    if num.is_zero() {
        return QRat::zero();
    }
    if g.is_one() {
        return QRat::from_parts_reduced(num, den);
    }
    let h = gcd(&num, &g);
    if h.is_one() {
        QRat::from_parts_reduced(num, den)
    } else {
        QRat::from_parts_reduced(exact_div(&num, &h).unwrap(), exact_div(&den, &h).unwrap())
    }
}

fn mul_impl(a: &QRat, b: &QRat) -> QRat {
    if a.is_zero() || b.is_zero() {
        return QRat::zero();
    }
    let (mut an, mut ad) = (a.num.clone(), a.den.clone());
    let (mut bn, mut bd) = (b.num.clone(), b.den.clone());
    if !an.is_monomial() && !bd.is_monomial() {
        let g = gcd(&an, &bd);
        if !g.is_one() {
            an = exact_div(&an, &g).unwrap();
            bd = exact_div(&bd, &g).unwrap();
        }
    }
    if !bn.is_monomial() && !ad.is_monomial() {
        let g = gcd(&bn, &ad);
        if !g.is_one() {
            bn = exact_div(&bn, &g).unwrap();
            ad = exact_div(&ad, &g).unwrap();
        }
    }
    QRat::from_parts_reduced(&an * &bn, &ad * &bd)
}

impl Add<&QRat> for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        add_impl(self, rhs, false)
    }
}

impl Sub<&QRat> for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        add_impl(self, rhs, true)
    }
}

impl Mul<&QRat> for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        mul_impl(self, rhs)
    }
}

impl Div<&QRat> for &QRat {
    type Output = Result<QRat>;
    fn div(self, rhs: &QRat) -> Result<QRat> {
        Ok(mul_impl(self, &rhs.recip()?))
    }
}

impl Add for QRat {
    type Output = QRat;
    fn add(self, rhs: QRat) -> QRat {
        add_impl(&self, &rhs, false)
    }
}

impl Sub for QRat {
    type Output = QRat;
    fn sub(self, rhs: QRat) -> QRat {
        add_impl(&self, &rhs, true)
    }
}

impl Mul for QRat {
    type Output = QRat;
    fn mul(self, rhs: QRat) -> QRat {
        mul_impl(&self, &rhs)
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -self.num, den: self.den }
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -self.clone()
    }
}

impl From<VPoly> for QRat {
    fn from(p: VPoly) -> Self {
        QRat::from_vpoly(p)
    }
}

impl From<i64> for QRat {
    fn from(c: i64) -> Self {
        QRat::from_int(c)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &VPoly| if p.num_terms() > 1 || p.low_exp() != 0 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> QRat {
        QRat::from_vpoly(VPoly::from_q_coeffs(cs))
    }

    fn frac(n: &[i64], d: &[i64]) -> QRat {
        QRat::new(VPoly::from_q_coeffs(n), VPoly::from_q_coeffs(d)).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn telescoping_sum() {
        let a = frac(&[1], &[-1, 1]);
        let b = frac(&[0, 1], &[1, -1]);
        assert_eq!(&a + &b, QRat::from_int(-1));
    }

    #[test]
    fn cancellation() {
        let a = frac(&[-1, 0, 1], &[1, -2, 1]);
        assert_eq!(&a * &qp(&[-1, 1]), qp(&[1, 1]));
    }

    #[test]
    fn half_powers() {
        assert_eq!(&QRat::v() * &QRat::v(), QRat::q());
    }

    #[test]
    fn canonical_denominator() {
        let a = frac(&[2], &[-2, 0, -2]);
        assert_eq!(a.denom(), &VPoly::from_q_coeffs(&[1, 0, 1]));
        assert_eq!(a.numer(), &VPoly::constant(-1));
        let b = QRat::new(VPoly::one(), VPoly::q_pow(3)).unwrap();
        assert_eq!(b.denom(), &VPoly::one());
        assert_eq!(b.numer(), &VPoly::q_pow(-3));
        assert_eq!(&QRat::from_int(1) / &QRat::from_int(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        assert_eq!(qp(&[1, 1]).eval_at_prime_power(2).unwrap(), r(3, 1));
        assert_eq!(frac(&[1], &[-1, 1]).eval_at_prime_power(3).unwrap(), r(1, 2));
        let p = &qp(&[1, 0, 1]) * &qp(&[1, 1, 0, 0, 0, 1, 1, 1]);
        assert_eq!(p.eval_at(1).unwrap(), r(10, 1));
        assert!(matches!(frac(&[1], &[-2, 1]).eval_at(2), Err(Error::Pole(_))));
        assert_eq!(QRat::v().eval_at(4), Err(Error::HalfIntegerExponent));
    }

    #[test]
    fn classification() {
        assert_eq!(frac(&[-1, 0, 1], &[-1, 1]).classify(), PolyClass::NonnegPolynomial);
        assert_eq!(frac(&[1], &[-1, 1]).classify(), PolyClass::NotPolynomial);
        assert_eq!(qp(&[0, -1, 1]).classify(), PolyClass::SignedPolynomial);
        assert_eq!(QRat::v_pow(-1).classify(), PolyClass::NotPolynomial);
    }

    #[test]
    fn rendering() {
        assert_eq!(frac(&[1], &[-1, 1]).to_string(), "1/(q - 1)");
        assert_eq!(QRat::from_rational(&r(3, 4)).to_string(), "3/4");
    }
}
