//! Exact numbers `a + b*sqrt(d)` for evaluating at `v = sqrt(q0)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{QRat, VPoly};
use crate::error::{Error, Result};

/// An element of `Q(sqrt(d))` for a fixed non-square `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl Surd {
    pub fn rational(a: BigRational, d: &BigInt) -> Self {
        Surd { a, b: BigRational::zero(), d: d.clone() }
    }

    pub fn from_int(a: i64, d: &BigInt) -> Self {
        Self::rational(BigRational::from_integer(a.into()), d)
    }

    pub fn sqrt(d: &BigInt) -> Self {
        Surd { a: BigRational::zero(), b: BigRational::one(), d: d.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone());
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Surd { a: &self.a / &norm, b: -&self.b / &norm, d: self.d.clone() })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Surd::from_int(1, &self.d);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl Add<&Surd> for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        Surd { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }
}

impl Sub<&Surd> for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        Surd { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d.clone() }
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let d = BigRational::from_integer(self.d.clone());
        Surd {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

/// Value of a Laurent polynomial in `v` at `v = sqrt(q0)`.
pub fn eval_vpoly_sqrt(p: &VPoly, q0: u64) -> Surd {
    let d = BigInt::from(q0);
    let q = BigRational::from_integer(d.clone());
    let mut s = Surd::from_int(0, &d);
    for (e, c) in p.terms() {
        let half = e.div_euclid(2);
        let mag = super::vpoly::pow_rational(&q, half) * BigRational::from_integer(c.clone());
        if e.rem_euclid(2) == 0 {
            s.a += mag;
        } else {
            s.b += mag;
        }
    }
    s
}

/// Value of a rational function at `v = sqrt(q0)`.
pub fn eval_qrat_sqrt(f: &QRat, q0: u64) -> Result<Surd> {
    let n = eval_vpoly_sqrt(f.numer(), q0);
    let d = eval_vpoly_sqrt(f.denom(), q0);
    Ok(&n * &d.recip().map_err(|_| Error::Pole(format!("v = sqrt({q0})")))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_squares_to_d() {
        let d = BigInt::from(2);
        let s = Surd::sqrt(&d);
        assert_eq!(&s * &s, Surd::from_int(2, &d));
        let x = &Surd::from_int(1, &d) + &s;
        assert_eq!(&x * &x.recip().unwrap(), Surd::from_int(1, &d));
    }

    #[test]
    fn evaluates_half_powers() {
        let f = QRat::new(VPoly::from_terms([(3, 1), (0, 1)]), VPoly::from_terms([(1, 1)])).unwrap();
        // (2^(3/2) + 1) / 2^(1/2) = 2 + 2^(-1/2) = 2 + sqrt(2)/2
        let v = eval_qrat_sqrt(&f, 2).unwrap();
        assert_eq!(v.a, BigRational::from_integer(2.into()));
        assert_eq!(v.b, BigRational::new(1.into(), 2.into()));
    }
}
