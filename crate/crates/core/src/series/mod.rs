//! Truncated formal series graded by tuples of dimension vectors, with a
//! pluggable twisted multiplication.

mod characters;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{parse_qrat, QRat};
use crate::quiver::Quiver;

pub use characters::{
    char_integral, char_integral_delta, char_integral_delta_t, char_integral_series, compositions, r_alpha,
    r_beta_gamma, r_composition, vectors_up_to,
};

/// A monomial key: `arity` dimension vectors laid out one after another.
pub type Key = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// Commutative product.
    Untwisted,
    /// `t^a t^b = <a,b>^(-1) t^(a+b)`.
    Euler,
    /// The `t`-fold product: slots are ordered top quotient first, and
    /// `x^b x^c = prod_{p <= p'} <b_p, c_p'>^(-1) x^(b+c)`.
    Flag,
    /// `t^a t^b = q^((<b,a> - <a,b>)/2) t^(a+b)`.
    Antisymmetric,
    /// Principal-coefficient quantum torus on keys `(x-exponent, y-exponent)`.
    Principal,
}

/// A twist `v^(e(b, c))` for the product of monomials with keys `b` and `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwistRule {
    kind: RuleKind,
    arity: usize,
    n: usize,
    euler: Vec<Vec<i64>>,
}

impl TwistRule {
    pub fn untwisted(n: usize, arity: usize) -> Self {
        TwistRule { kind: RuleKind::Untwisted, arity, n, euler: Vec::new() }
    }

    pub fn euler(q: &Quiver) -> Self {
        Self::with_quiver(RuleKind::Euler, q, 1)
    }

    /// The `t`-fold rule; `flag(q, 1)` coincides with `euler(q)`.
    pub fn flag(q: &Quiver, t: usize) -> Self {
        assert!(t >= 1);
        Self::with_quiver(RuleKind::Flag, q, t)
    }

    pub fn antisymmetric(q: &Quiver) -> Self {
        Self::with_quiver(RuleKind::Antisymmetric, q, 1)
    }

    pub fn principal(q: &Quiver) -> Self {
        Self::with_quiver(RuleKind::Principal, q, 2)
    }

    fn with_quiver(kind: RuleKind, q: &Quiver, arity: usize) -> Self {
        TwistRule { kind, arity, n: q.num_vertices(), euler: q.euler_matrix() }
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn key_len(&self) -> usize {
        self.n * self.arity
    }

    pub fn id(&self) -> String {
        let kind = serde_json::to_value(self.kind).unwrap();
        format!("{}/{}", kind.as_str().unwrap(), self.arity)
    }

    fn ef(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                s += ai * self.euler[i][j] * bj;
            }
        }
        s
    }

    /// Exponent of `v` in the product of monomials `b` and `c`.
    pub fn twist(&self, b: &[i64], c: &[i64]) -> i64 {
        let n = self.n;
        match self.kind {
            RuleKind::Untwisted => 0,
            RuleKind::Euler => -2 * self.ef(b, c),
            RuleKind::Flag => {
                let mut s = 0;
                for p in 0..self.arity {
                    for pp in p..self.arity {
                        s += self.ef(&b[p * n..(p + 1) * n], &c[pp * n..(pp + 1) * n]);
                    }
                }
                -2 * s
            }
            RuleKind::Antisymmetric => self.ef(c, b) - self.ef(b, c),
            RuleKind::Principal => {
                let (a1, b1) = b.split_at(n);
                let (a2, b2) = c.split_at(n);
                let dot = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<i64>();
                // b1 B b2 with B = E - E^T
                let bform = self.ef(b1, b2) - self.ef(b2, b1);
                dot(b1, a2) - dot(a1, b2) + bform
            }
        }
    }

    /// Grading used for truncation: total dimension, or the `y`-part for principal keys.
    pub fn degree(&self, key: &[i64]) -> i64 {
        match self.kind {
            RuleKind::Principal => key[self.n..].iter().sum(),
            _ => key.iter().sum(),
        }
    }

    fn check_key(&self, key: &[i64]) -> Result<()> {
        if key.len() != self.key_len() {
            return Err(Error::DimensionMismatch(format!("key of length {} for rule {}", key.len(), self.id())));
        }
        let laurent_ok = |i: usize| self.kind == RuleKind::Principal && i < self.n;
        if key.iter().enumerate().any(|(i, &x)| x < 0 && !laurent_ok(i)) {
            return Err(Error::InvalidArgument(format!("negative exponent in key {key:?}")));
        }
        Ok(())
    }
}

impl fmt::Debug for TwistRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistRule({} on {} vertices)", self.id(), self.n)
    }
}

/// A formal series truncated at `degree <= truncation`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    rule: TwistRule,
    truncation: i64,
    terms: BTreeMap<Key, QRat>,
}

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    rule: String,
    truncation: i64,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    key: Key,
    coeff: String,
}

impl GradedSeries {
    pub fn zero(rule: TwistRule, truncation: i64) -> Self {
        GradedSeries { rule, truncation, terms: BTreeMap::new() }
    }

    pub fn one(rule: TwistRule, truncation: i64) -> Self {
        let k = vec![0; rule.key_len()];
        let mut s = Self::zero(rule, truncation);
        s.terms.insert(k, QRat::one());
        s
    }

    pub fn monomial(rule: TwistRule, truncation: i64, key: Key, coeff: QRat) -> Result<Self> {
        let mut s = Self::zero(rule, truncation);
        s.add_term(key, coeff)?;
        Ok(s)
    }

    pub fn from_terms(rule: TwistRule, truncation: i64, terms: impl IntoIterator<Item = (Key, QRat)>) -> Result<Self> {
        let mut s = Self::zero(rule, truncation);
        for (k, c) in terms {
            s.add_term(k, c)?;
        }
        Ok(s)
    }

    /// Add `coeff * key`; silently drops keys beyond the truncation.
    pub fn add_term(&mut self, key: Key, coeff: QRat) -> Result<()> {
        self.rule.check_key(&key)?;
        if self.rule.degree(&key) > self.truncation || coeff.is_zero() {
            return Ok(());
        }
        self.add_unchecked(key, coeff);
        Ok(())
    }

    fn add_unchecked(&mut self, key: Key, coeff: QRat) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn rule(&self) -> &TwistRule {
        &self.rule
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn coeff(&self, key: &[i64]) -> QRat {
        self.terms.get(key).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &QRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(k, c)| k.iter().all(|&x| x == 0) && c.is_one())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rule != other.rule {
            return Err(Error::RuleMismatch(self.rule.id(), other.rule.id()));
        }
        if self.truncation != other.truncation {
            return Err(Error::InvalidArgument(format!(
                "truncation mismatch: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut r = self.clone();
        for (k, c) in &other.terms {
            r.add_unchecked(k.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QRat::from_int(-1)))
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut r = Self::zero(self.rule.clone(), self.truncation);
        if c.is_zero() {
            return r;
        }
        r.terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        r
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Key, &QRat) -> QRat) -> Self {
        let mut r = Self::zero(self.rule.clone(), self.truncation);
        for (k, c) in &self.terms {
            let x = f(k, c);
            if !x.is_zero() {
                r.terms.insert(k.clone(), x);
            }
        }
        r
    }

    /// Same terms under a different rule of the same key shape.
    pub fn with_rule(&self, rule: TwistRule) -> Result<Self> {
        if rule.key_len() != self.rule.key_len() {
            return Err(Error::RuleMismatch(self.rule.id(), rule.id()));
        }
        let mut r = Self::zero(rule, self.truncation);
        for (k, c) in &self.terms {
            r.add_term(k.clone(), c.clone())?;
        }
        Ok(r)
    }

    /// Drop every term of degree above `truncation`.
    pub fn truncate(&self, truncation: i64) -> Self {
        let mut r = Self::zero(self.rule.clone(), truncation);
        for (k, c) in &self.terms {
            if self.rule.degree(k) <= truncation {
                r.terms.insert(k.clone(), c.clone());
            }
        }
        r
    }

    /// Twisted Cauchy product, truncated.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let rule = &self.rule;
        let mut buckets: BTreeMap<Key, Vec<QRat>> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            let da = rule.degree(ka);
            for (kb, cb) in &other.terms {
                if da + rule.degree(kb) > self.truncation {
                    continue;
                }
                let key: Key = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let c = (ca * cb).shift(rule.twist(ka, kb));
                buckets.entry(key).or_default().push(c);
            }
        }
        let mut r = Self::zero(rule.clone(), self.truncation);
        for (k, cs) in buckets {
            let s = sum_qrats(cs);
            if !s.is_zero() {
                r.terms.insert(k, s);
            }
        }
        Ok(r)
    }

    /// `f^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.rule.clone(), self.truncation);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Two-sided inverse to truncation. The degree-0 part must be a nonzero constant.
    pub fn inverse(&self) -> Result<Self> {
        let rule = &self.rule;
        let zero_key = vec![0i64; rule.key_len()];
        if self.terms.keys().any(|k| rule.degree(k) <= 0 && k != &zero_key) {
            return Err(Error::NonUnitConstant);
        }
        let c0 = self.terms.get(&zero_key).ok_or(Error::NonUnitConstant)?;
        let c0inv = c0.recip()?;
        let neg_c0inv = -&c0inv;
        let mut by_degree: BTreeMap<i64, Vec<(Key, QRat)>> = BTreeMap::new();
        by_degree.insert(0, vec![(zero_key.clone(), c0inv)]);
        let f: Vec<(&Key, &QRat, i64)> =
            self.terms.iter().filter(|(k, _)| **k != zero_key).map(|(k, c)| (k, c, rule.degree(k))).collect();
        for d in 1..=self.truncation {
            let mut buckets: BTreeMap<Key, Vec<QRat>> = BTreeMap::new();
            for &(k1, c1, d1) in &f {
                let Some(prev) = by_degree.get(&(d - d1)) else { continue };
                for (k2, c2) in prev {
                    let key: Key = k1.iter().zip(k2).map(|(x, y)| x + y).collect();
                    buckets.entry(key).or_default().push((c1 * c2).shift(rule.twist(k1, k2)));
                }
            }
            let layer: Vec<(Key, QRat)> = buckets
                .into_iter()
                .map(|(k, cs)| (k, &sum_qrats(cs) * &neg_c0inv))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !layer.is_empty() {
                by_degree.insert(d, layer);
            }
        }
        let mut r = Self::zero(rule.clone(), self.truncation);
        for (_, layer) in by_degree {
            for (k, c) in layer {
                r.terms.insert(k, c);
            }
        }
        Ok(r)
    }

    /// Adams operation `psi_n`: `v -> v^n` on coefficients and `key -> n * key`.
    pub fn adams(&self, n: u32) -> Result<Self> {
        if self.rule.kind != RuleKind::Untwisted {
            return Err(Error::InvalidArgument("Adams operations need the untwisted product".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("Adams index must be positive".into()));
        }
        let mut r = Self::zero(self.rule.clone(), self.truncation);
        for (k, c) in &self.terms {
            let key: Key = k.iter().map(|x| x * n as i64).collect();
            if self.rule.degree(&key) <= self.truncation {
                r.terms.insert(key, c.substitute_power(n));
            }
        }
        Ok(r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = SeriesDoc {
            rule: self.rule.id(),
            truncation: self.truncation,
            terms: self.terms.iter().map(|(k, c)| TermDoc { key: k.clone(), coeff: c.to_string() }).collect(),
        };
        serde_json::to_value(doc).unwrap()
    }

    /// Inverse of [`GradedSeries::to_json`]; the rule id must match `rule`.
    pub fn from_json(rule: TwistRule, value: &serde_json::Value) -> Result<Self> {
        let doc: SeriesDoc = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        if doc.rule != rule.id() {
            return Err(Error::RuleMismatch(doc.rule, rule.id()));
        }
        let mut s = Self::zero(rule, doc.truncation);
        for t in doc.terms {
            s.add_term(t.key, parse_qrat(&t.coeff)?)?;
        }
        Ok(s)
    }
}

/// Sum many rational functions, grouping equal denominators first.
pub(crate) fn sum_qrats(cs: Vec<QRat>) -> QRat {
    if cs.len() == 1 {
        return cs.into_iter().next().unwrap();
    }
    let mut groups: Vec<(crate::exactq::VPoly, crate::exactq::VPoly)> = Vec::new();
    let mut hashed: std::collections::HashMap<crate::exactq::VPoly, usize> = std::collections::HashMap::new();
    let mut acc_const = QRat::zero();
    for c in cs {
        if c.is_laurent() {
            acc_const = &acc_const + &c;
            continue;
        }
        match hashed.get(c.denom()) {
            Some(&i) => groups[i].0 += c.numer(),
            None => {
                hashed.insert(c.denom().clone(), groups.len());
                groups.push((c.numer().clone(), c.denom().clone()));
            }
        }
    }
    let mut acc = acc_const;
    for (n, d) in groups {
        if !n.is_zero() {
            acc = &acc + &QRat::new(n, d).unwrap();
        }
    }
    acc
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries[{}; <= {}]{{", self.rule.id(), self.truncation)?;
        for (i, (k, c)) in self.terms.iter().enumerate() {
            write!(f, "{}{k:?}: {c}", if i == 0 { "" } else { ", " })?;
        }
        write!(f, "}}")
    }
}

/// `f * g`, erroring on rule mismatch.
pub fn series_mul(f: &GradedSeries, g: &GradedSeries) -> Result<GradedSeries> {
    f.mul(g)
}

/// Two-sided inverse to truncation.
pub fn series_inverse(f: &GradedSeries) -> Result<GradedSeries> {
    f.inverse()
}

/// Adams operation `psi_n`.
pub fn adams(f: &GradedSeries, n: u32) -> Result<GradedSeries> {
    f.adams(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::VPoly;
    use proptest::prelude::*;

    fn q(k: i64) -> QRat {
        QRat::v_pow(2 * k)
    }

    #[test]
    fn euler_products_on_k2() {
        let k2 = Quiver::kronecker(2);
        let r = TwistRule::euler(&k2);
        let x = GradedSeries::monomial(r.clone(), 4, vec![1, 0], QRat::one()).unwrap();
        let y = GradedSeries::monomial(r.clone(), 4, vec![0, 1], QRat::one()).unwrap();
        assert_eq!(x.mul(&y).unwrap().coeff(&[1, 1]), q(2));
        assert_eq!(y.mul(&x).unwrap().coeff(&[1, 1]), QRat::one());
    }

    #[test]
    fn geometric_series() {
        let r = TwistRule::untwisted(1, 1);
        let f = GradedSeries::from_terms(r.clone(), 5, [(vec![0], QRat::one()), (vec![1], QRat::from_int(-1))]).unwrap();
        let g = GradedSeries::from_terms(r.clone(), 5, (0..=7).map(|d| (vec![d], QRat::one()))).unwrap();
        assert!(f.mul(&g).unwrap().is_one());
        assert_eq!(f.inverse().unwrap(), g);
        let bad = GradedSeries::monomial(r, 5, vec![1], QRat::one()).unwrap();
        assert_eq!(bad.inverse(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn rule_mismatch() {
        let a = GradedSeries::one(TwistRule::euler(&Quiver::kronecker(2)), 3);
        let b = GradedSeries::one(TwistRule::antisymmetric(&Quiver::kronecker(2)), 3);
        assert!(matches!(a.mul(&b), Err(Error::RuleMismatch(_, _))));
        assert!(a.adams(2).is_err());
    }

    #[test]
    fn inverse_of_integral_series() {
        for q in [Quiver::a_n(1), Quiver::kronecker(2)] {
            let f = char_integral_series(&q, 4).unwrap();
            let g = f.inverse().unwrap();
            assert!(f.mul(&g).unwrap().is_one());
            assert!(g.mul(&f).unwrap().is_one());
        }
    }

    #[test]
    fn adams_examples() {
        let r = TwistRule::untwisted(2, 1);
        let f = GradedSeries::monomial(r.clone(), 6, vec![1, 1], q(1)).unwrap();
        assert_eq!(f.adams(2).unwrap(), GradedSeries::monomial(r.clone(), 6, vec![2, 2], q(2)).unwrap());
        assert_eq!(f.adams(1).unwrap(), f);
        assert!(f.adams(4).unwrap().is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let f = char_integral_series(&Quiver::kronecker(2), 3).unwrap();
        let j = f.to_json();
        assert_eq!(j["rule"], "euler/1");
        assert_eq!(GradedSeries::from_json(f.rule().clone(), &j).unwrap(), f);
        assert!(GradedSeries::from_json(TwistRule::antisymmetric(&Quiver::kronecker(2)), &j).is_err());
    }

    fn arb_coeff() -> impl Strategy<Value = QRat> {
        (-2i64..3, -2i64..3, -3i64..4).prop_map(|(a, b, e)| QRat::from_vpoly(VPoly::from_terms([(e, a), (e + 1, b)])))
    }

    fn arb_series(rule: TwistRule, trunc: i64) -> impl Strategy<Value = GradedSeries> {
        let len = rule.key_len();
        let principal = rule.kind() == RuleKind::Principal;
        let n = rule.num_vertices();
        prop::collection::vec((prop::collection::vec(0i64..2, len), prop::collection::vec(-1i64..2, n), arb_coeff()), 0..5)
            .prop_map(move |ts| {
                let mut s = GradedSeries::zero(rule.clone(), trunc);
                for (mut k, shift, c) in ts {
                    if principal {
                        for i in 0..n {
                            k[i] += shift[i];
                        }
                    }
                    s.add_term(k, c).unwrap();
                }
                s
            })
    }

    fn all_rules() -> Vec<TwistRule> {
        let q = Quiver::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        vec![
            TwistRule::untwisted(3, 1),
            TwistRule::euler(&q),
            TwistRule::flag(&q, 2),
            TwistRule::flag(&q, 3),
            TwistRule::antisymmetric(&q),
            TwistRule::principal(&q),
        ]
    }

    fn triples() -> impl Strategy<Value = (GradedSeries, GradedSeries, GradedSeries)> {
        (0usize..6).prop_flat_map(|i| {
            let r = all_rules()[i].clone();
            (arb_series(r.clone(), 4), arb_series(r.clone(), 4), arb_series(r, 4))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn products_are_associative((a, b, c) in triples()) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn twists_satisfy_the_cocycle_identity(i in 0usize..6, a in prop::collection::vec(-2i64..3, 9), b in prop::collection::vec(-2i64..3, 9), c in prop::collection::vec(-2i64..3, 9)) {
            let rule = all_rules()[i].clone();
            let l = rule.key_len();
            let (a, b, c) = (&a[..l], &b[..l], &c[..l]);
            let add = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<_>>();
            prop_assert_eq!(rule.twist(a, b) + rule.twist(&add(a, b), c), rule.twist(b, c) + rule.twist(a, &add(b, c)));
        }

        #[test]
        fn adams_is_a_ring_morphism(n in 1u32..4, f in arb_series(TwistRule::untwisted(2, 1), 6), g in arb_series(TwistRule::untwisted(2, 1), 6)) {
            prop_assert_eq!(f.mul(&g).unwrap().adams(n).unwrap(), f.adams(n).unwrap().mul(&g.adams(n).unwrap()).unwrap());
            prop_assert_eq!(f.adams(3).unwrap().adams(2).unwrap(), f.adams(6).unwrap());
        }

        #[test]
        fn inverse_is_two_sided(g in (0usize..6).prop_flat_map(|i| arb_series(all_rules()[i].clone(), 4))) {
            let zero_key = vec![0i64; g.rule().key_len()];
            let f = GradedSeries::one(g.rule().clone(), 4)
                .add(&g.map_coeffs(|k, c| if k == &zero_key { QRat::zero() } else { c.clone() }))
                .unwrap();
            let f = if f.rule().kind() == RuleKind::Principal {
                f.map_coeffs(|k, c| if f.rule().degree(k) == 0 && k != &zero_key { QRat::zero() } else { c.clone() })
            } else {
                f
            };
            let h = f.inverse().unwrap();
            prop_assert!(f.mul(&h).unwrap().is_one());
            prop_assert!(h.mul(&f).unwrap().is_one());
        }
    }
}
