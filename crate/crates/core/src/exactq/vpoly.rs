//! Laurent polynomials in `v = q^(1/2)` with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial `sum_k c_k v^k`.
///
/// Stored densely from the lowest to the highest exponent. The first and last
/// stored coefficients are nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        VPoly { low: exp, coeffs: vec![c] }
    }

    /// `v = q^(1/2)`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `q^k`, `k` possibly negative.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, 2 * k)
    }

    /// Polynomial in `q` from coefficients listed by ascending power of `q`.
    pub fn from_q_coeffs<T: Into<BigInt> + Clone>(cs: &[T]) -> Self {
        let mut coeffs = Vec::with_capacity(2 * cs.len());
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                coeffs.push(BigInt::zero());
            }
            coeffs.push(c.clone().into());
        }
        Self::from_dense(0, coeffs)
    }

    /// Build from dense coefficients of `v^low, v^(low+1), ...`, trimming zeros.
    pub fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        VPoly { low: low + lead as i64, coeffs }
    }

    /// Build from sparse `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c * v^k` (including zero).
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest exponent of `v` carrying a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent of `v` carrying a nonzero coefficient.
    pub fn high_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Coefficient of `q^k`.
    pub fn q_coeff(&self, k: i64) -> BigInt {
        self.coeff(2 * k)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(exponent of v, coefficient)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// True when only even powers of `v` occur, i.e. this is a Laurent polynomial in `q`.
    pub fn is_in_q(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        VPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub(crate) fn shift_in_place(&mut self, k: i64) {
        if !self.is_zero() {
            self.low += k;
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        VPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divide every coefficient by `c`; `c` must divide all of them.
    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> Self {
        VPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `v -> v^n` (the Adams operation on coefficients).
    pub fn substitute_power(&self, n: u32) -> Self {
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let n = n as i64;
        let len = (self.coeffs.len() - 1) * n as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n as usize] = c.clone();
        }
        VPoly { low: self.low * n, coeffs }
    }

    /// `f(v) -> f(-v)`.
    pub fn negate_v(&self) -> Self {
        VPoly {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (self.low + i as i64).rem_euclid(2) == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Evaluate at a rational value of `q`. Requires only even powers of `v`.
    pub fn eval_q(&self, q0: &BigRational) -> Result<BigRational> {
        if !self.is_in_q() {
            return Err(Error::HalfIntegerExponent);
        }
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if q0.is_zero() && self.low < 0 {
            return Err(Error::Pole("0".into()));
        }
        let lo = self.low.div_euclid(2);
        let hi = self.high_exp().div_euclid(2);
        // Horner in q from the top.
        let mut acc = BigRational::zero();
        for k in (lo..=hi).rev() {
            acc = acc * q0 + BigRational::from_integer(self.q_coeff(k));
        }
        Ok(acc * pow_rational(q0, lo))
    }

    /// Evaluate at integer `v`.
    pub fn eval_v_int(&self, v0: &BigInt) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v0 + c;
        }
        BigRational::from_integer(acc) * pow_rational(&BigRational::from_integer(v0.clone()), self.low)
    }

    /// Sum of coefficients, i.e. the value at `v = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub(crate) fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }
}

pub(crate) fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

fn add_into(acc: &mut VPoly, other: &VPoly, negate: bool) {
    if other.is_zero() {
        return;
    }
    if acc.is_zero() {
        *acc = if negate { -other.clone() } else { other.clone() };
        return;
    }
    let lo = acc.low.min(other.low);
    let hi = acc.high_exp().max(other.high_exp());
    if lo < acc.low {
        let pad = (acc.low - lo) as usize;
        let mut c = vec![BigInt::zero(); pad];
        c.append(&mut acc.coeffs);
        acc.coeffs = c;
        acc.low = lo;
    }
    let len = (hi - lo + 1) as usize;
    if acc.coeffs.len() < len {
        acc.coeffs.resize(len, BigInt::zero());
    }
    let off = (other.low - lo) as usize;
    for (i, c) in other.coeffs.iter().enumerate() {
        if negate {
            acc.coeffs[off + i] -= c;
        } else {
            acc.coeffs[off + i] += c;
        }
    }
    let taken = std::mem::take(&mut acc.coeffs);
    *acc = VPoly::from_dense(acc.low, taken);
}

impl AddAssign<&VPoly> for VPoly {
    fn add_assign(&mut self, rhs: &VPoly) {
        add_into(self, rhs, false);
    }
}

impl SubAssign<&VPoly> for VPoly {
    fn sub_assign(&mut self, rhs: &VPoly) {
        add_into(self, rhs, true);
    }
}

impl Add<&VPoly> for &VPoly {
    type Output = VPoly;
    fn add(self, rhs: &VPoly) -> VPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub<&VPoly> for &VPoly {
    type Output = VPoly;
    fn sub(self, rhs: &VPoly) -> VPoly {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Add for VPoly {
    type Output = VPoly;
    fn add(mut self, rhs: VPoly) -> VPoly {
        self += &rhs;
        self
    }
}

impl Sub for VPoly {
    type Output = VPoly;
    fn sub(mut self, rhs: VPoly) -> VPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&VPoly> for &VPoly {
    type Output = VPoly;
    fn mul(self, rhs: &VPoly) -> VPoly {
        if self.is_zero() || rhs.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        VPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Mul for VPoly {
    type Output = VPoly;
    fn mul(self, rhs: VPoly) -> VPoly {
        &self * &rhs
    }
}

impl Neg for VPoly {
    type Output = VPoly;
    fn neg(self) -> VPoly {
        VPoly { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &VPoly {
    type Output = VPoly;
    fn neg(self) -> VPoly {
        -self.clone()
    }
}

impl From<i64> for VPoly {
    fn from(c: i64) -> Self {
        VPoly::constant(c)
    }
}

impl From<BigInt> for VPoly {
    fn from(c: BigInt) -> Self {
        VPoly::constant(c)
    }
}

/// Total order used only for deterministic sorting: by span, then coefficients.
impl Ord for VPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for VPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Render one monomial `v^e` in `q` notation; empty for `e = 0`.
pub(crate) fn render_q_power(e: i64) -> String {
    if e == 0 {
        String::new()
    } else if e % 2 == 0 {
        match e / 2 {
            1 => "q".to_string(),
            k if k < 0 => format!("q^({k})"),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({e}/2)")
    }
}

impl fmt::Display for VPoly {
    /// Expanded form, exponents descending, `q^(k/2)` for odd powers of `v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = render_q_power(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VPoly({self})")
    }
}
