//! Harder-Narasimhan recursion for semistable characters.
//!
//! Every graded piece of total dimension `a` is stored multiplied by `|GL_a|`,
//! so all intermediate values are Laurent polynomials in `v`. The factor
//! `|GL_(a+b)| / (|GL_a| |GL_b|) = prod_v q^(a_v b_v) binom(a_v + b_v, a_v)_q`
//! is applied when two pieces are multiplied.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::exactq::{gaussian, VPoly};
use crate::quiver::{DimVector, Quiver, Slope, SlopeValue};
use crate::series::TwistRule;

/// Map from a `t`-fold key (slots top quotient first) to a normalized coefficient.
pub(crate) type Piece = BTreeMap<Vec<u32>, VPoly>;

pub(crate) struct Engine<'a> {
    q: &'a Quiver,
    slope: &'a Slope,
    t: usize,
    rule: TwistRule,
    /// Only keys componentwise below this bound are kept.
    bound: Option<Vec<u32>>,
    s_memo: HashMap<DimVector, Rc<Piece>>,
    g_memo: HashMap<(DimVector, Option<SlopeValue>), Rc<Piece>>,
    ratio_memo: HashMap<(DimVector, DimVector), VPoly>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(q: &'a Quiver, slope: &'a Slope, t: usize, bound: Option<Vec<u32>>) -> Self {
        Engine {
            q,
            slope,
            t,
            rule: TwistRule::flag(q, t),
            bound,
            s_memo: HashMap::new(),
            g_memo: HashMap::new(),
            ratio_memo: HashMap::new(),
        }
    }

    fn n(&self) -> usize {
        self.q.num_vertices()
    }

    fn within_bound(&self, key: &[u32]) -> bool {
        self.bound.as_ref().is_none_or(|b| key.iter().zip(b).all(|(x, y)| x <= y))
    }

    fn mu(&self, a: &DimVector) -> SlopeValue {
        self.slope.value(a).expect("nonzero dimension vector")
    }

    /// `|GL_(a+b)| / (|GL_a| |GL_b|)`.
    pub(crate) fn gl_ratio(&mut self, a: &DimVector, b: &DimVector) -> VPoly {
        if a.is_zero() || b.is_zero() {
            return VPoly::one();
        }
        if let Some(p) = self.ratio_memo.get(&(a.clone(), b.clone())) {
            return p.clone();
        }
        let mut acc = VPoly::one();
        let mut e = 0i64;
        for (&x, &y) in a.0.iter().zip(&b.0) {
            e += x as i64 * y as i64;
            if x > 0 && y > 0 {
                acc = &acc * &gaussian(x + y, x);
            }
        }
        let acc = acc.shift(2 * e);
        self.ratio_memo.insert((a.clone(), b.clone()), acc.clone());
        acc
    }

    fn total(&self, key: &[u32]) -> DimVector {
        let n = self.n();
        DimVector((0..n).map(|v| (0..self.t).map(|p| key[p * n + v]).sum()).collect())
    }

    fn twist(&self, a: &[u32], b: &[u32]) -> i64 {
        let a: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        let b: Vec<i64> = b.iter().map(|&x| x as i64).collect();
        self.rule.twist(&a, &b)
    }

    /// `|GL_a| r_K` summed over keys `K` of total `a`.
    pub(crate) fn character(&mut self, a: &DimVector) -> Piece {
        let n = self.n();
        let mut out = Piece::new();
        for parts in crate::series::compositions(a, self.t) {
            let key: Vec<u32> = parts.iter().flat_map(|p| p.0.iter().copied()).collect();
            if !self.within_bound(&key) {
                continue;
            }
            let mut e = 0i64;
            let mut coeff = VPoly::one();
            let mut rest = a.clone();
            for (p, ap) in parts.iter().enumerate() {
                e += 2 * self.q.rep_space_dim(ap) as i64;
                for aq in &parts[p + 1..] {
                    e -= 2 * self.q.euler_additive(ap, aq).unwrap();
                }
                rest = rest.checked_sub(ap).unwrap();
                let r = self.gl_ratio(ap, &rest);
                coeff = &coeff * &r;
            }
            debug_assert_eq!(key.len(), n * self.t);
            out.insert(key, coeff.shift(e));
        }
        out
    }

    /// Product of normalized pieces of totals `a` and `b`.
    pub(crate) fn mul(&mut self, x: &Piece, a: &DimVector, y: &Piece, b: &DimVector) -> Piece {
        let mut acc: BTreeMap<Vec<u32>, VPoly> = BTreeMap::new();
        for (k1, c1) in x {
            for (k2, c2) in y {
                let key: Vec<u32> = k1.iter().zip(k2).map(|(p, q)| p + q).collect();
                if !self.within_bound(&key) {
                    continue;
                }
                let term = (c1 * c2).shift(self.twist(k1, k2));
                acc.entry(key).and_modify(|s| *s += &term).or_insert(term);
            }
        }
        let r = self.gl_ratio(a, b);
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, &c * &r)).collect()
    }

    /// Normalized semistable piece `|GL_a| S_a`.
    pub(crate) fn semistable(&mut self, a: &DimVector) -> Rc<Piece> {
        if let Some(p) = self.s_memo.get(a) {
            return p.clone();
        }
        let mut s = self.character(a);
        for a1 in a.sub_vectors() {
            if a1.is_zero() || &a1 == a {
                continue;
            }
            let rest = a.checked_sub(&a1).unwrap();
            let m1 = self.mu(&a1);
            let s1 = self.semistable(&a1);
            if s1.is_empty() {
                continue;
            }
            let g = self.tail(&rest, Some(m1));
            if g.is_empty() {
                continue;
            }
            let prod = self.mul(&s1, &a1, &g, &rest);
            for (k, c) in prod {
                let e = s.entry(k).or_insert_with(VPoly::zero);
                *e -= &c;
            }
        }
        s.retain(|_, c| !c.is_zero());
        let s = Rc::new(s);
        self.s_memo.insert(a.clone(), s.clone());
        s
    }

    /// Sum over decompositions of `b` into semistable pieces of strictly
    /// increasing slope, all above `floor` (`None` is minus infinity).
    fn tail(&mut self, b: &DimVector, floor: Option<SlopeValue>) -> Rc<Piece> {
        if b.is_zero() {
            let mut one = Piece::new();
            one.insert(vec![0; self.n() * self.t], VPoly::one());
            return Rc::new(one);
        }
        let memo_key = (b.clone(), floor);
        if let Some(p) = self.g_memo.get(&memo_key) {
            return p.clone();
        }
        let mut acc: Piece = Piece::new();
        for a1 in b.sub_vectors() {
            if a1.is_zero() {
                continue;
            }
            let m1 = self.mu(&a1);
            if floor.is_some_and(|f| m1 <= f) {
                continue;
            }
            let rest = b.checked_sub(&a1).unwrap();
            let s1 = self.semistable(&a1);
            if s1.is_empty() {
                continue;
            }
            let g = self.tail(&rest, Some(m1));
            if g.is_empty() {
                continue;
            }
            for (k, c) in self.mul(&s1, &a1, &g, &rest) {
                acc.entry(k).and_modify(|s| *s += &c).or_insert(c);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let acc = Rc::new(acc);
        self.g_memo.insert(memo_key, acc.clone());
        acc
    }

    pub(crate) fn total_of(&self, key: &[u32]) -> DimVector {
        self.total(key)
    }
}
