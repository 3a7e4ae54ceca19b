//! Brute-force ground truth over small prime fields.
//!
//! Everything here enumerates points, subspaces or group orbits explicitly and
//! refuses to start when the work exceeds the configured budget.

pub mod checks;
mod fp;
mod rep;
mod sub;

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Slope};

pub use fp::{general_linear, gl_size, subspaces, Fq, Mat};
pub use rep::{ext_space, hom_space, middle_term, ExtSpace, FqRep, VertexMaps};
pub use sub::{
    all_subreps, filtration_alt_sum, flag_count, gr_count, is_semistable, is_semistable_king, is_stable, quotient,
    restriction, subreps, Category, SubRep,
};

/// Environment variable overriding the default point budget.
pub const BUDGET_ENV: &str = "HALLCOUNT_MAX_POINTS";

/// An isomorphism class with its orbit size and automorphism count.
#[derive(Debug, Clone)]
pub struct IsoClass {
    pub representative: FqRep,
    pub orbit_size: u128,
    pub aut_count: u128,
}

/// Enumeration context: a quiver, a prime field and a budget.
#[derive(Debug, Clone)]
pub struct Oracle {
    quiver: Arc<Quiver>,
    field: Fq,
    budget: u128,
}

impl Oracle {
    pub const DEFAULT_BUDGET: u128 = 1 << 24;

    /// Budget from `HALLCOUNT_MAX_POINTS` when set, else `2^24`.
    pub fn new(quiver: &Quiver, p: u32) -> Result<Self> {
        let budget = match std::env::var(BUDGET_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV} = {s:?}")))?,
            Err(_) => Self::DEFAULT_BUDGET,
        };
        Ok(Oracle { quiver: Arc::new(quiver.clone()), field: Fq::new(p)?, budget })
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_field(mut self, field: Fq) -> Self {
        self.field = field;
        self
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    fn charge(&self, required: Option<u128>) -> Result<u128> {
        match required {
            Some(r) if r <= self.budget => Ok(r),
            r => Err(Error::Budget { required: r.unwrap_or(u128::MAX), budget: self.budget }),
        }
    }

    fn check_dim(&self, a: &DimVector) -> Result<()> {
        if a.len() != self.quiver.num_vertices() {
            return Err(Error::DimensionMismatch(format!("{a} on {} vertices", self.quiver.num_vertices())));
        }
        Ok(())
    }

    /// `|Rep_a(F_p)|`, checked against the budget.
    pub fn num_points(&self, a: &DimVector) -> Result<u128> {
        self.check_dim(a)?;
        self.charge(self.field.order_pow(self.quiver.rep_space_dim(a)))
    }

    /// `|GL_a(F_p)|`.
    pub fn gl_order(&self, a: &DimVector) -> u128 {
        a.0.iter().map(|&n| gl_size(self.field.p(), n)).product()
    }

    pub fn zero_rep(&self, a: &DimVector) -> FqRep {
        FqRep::zero(self.quiver.clone(), self.field, a.clone())
    }

    pub fn simple(&self, v: usize) -> FqRep {
        FqRep::simple(self.quiver.clone(), self.field, v)
    }

    pub fn rep(&self, a: &DimVector, mats: Vec<Mat>) -> Result<FqRep> {
        FqRep::new(self.quiver.clone(), self.field, a.clone(), mats)
    }

    /// Every point of `Rep_a(F_p)` exactly once, ordered by point index.
    pub fn enumerate_reps(&self, a: &DimVector) -> Result<impl Iterator<Item = FqRep> + '_> {
        let n = self.num_points(a)? as u64;
        let a = a.clone();
        Ok((0..n).map(move |i| FqRep::from_index(&self.quiver, self.field, &a, i)))
    }

    /// Whether some element of `Hom(M, N)` is invertible at every vertex.
    pub fn is_isomorphic(&self, m: &FqRep, n: &FqRep) -> Result<bool> {
        if m.dim() != n.dim() {
            return Ok(false);
        }
        let basis = hom_space(m, n)?;
        self.charge(self.field.order_pow(basis.len() as u64))?;
        let f = self.field;
        Ok(rep::combinations(&f, &basis, &rep::zero_maps(m, n)).any(|g| g.iter().all(|x| x.is_invertible(&f))))
    }

    /// `a_M = |Aut(M)|` by enumerating `End(M)`.
    pub fn aut_count(&self, m: &FqRep) -> Result<u128> {
        let basis = hom_space(m, m)?;
        self.charge(self.field.order_pow(basis.len() as u64))?;
        let f = self.field;
        Ok(rep::combinations(&f, &basis, &rep::zero_maps(m, m)).filter(|g| g.iter().all(|x| x.is_invertible(&f))).count()
            as u128)
    }

    /// Orbits of `GL_a` on `Rep_a(F_p)`, found by a breadth-first sweep with
    /// elementary generators. `orbit_size * aut_count = |GL_a|` is asserted
    /// whenever `End(M)` is small enough to enumerate.
    pub fn iso_classes(&self, a: &DimVector) -> Result<Vec<IsoClass>> {
        let n = self.num_points(a)? as usize;
        let f = self.field;
        let gl = self.gl_order(a);
        let mut gens: Vec<(usize, Mat, Mat)> = Vec::new();
        let lambda = (1..f.p() as u8).find(|&x| (1..f.p() - 1).all(|k| pow_mod(x, k, &f) != 1)).unwrap();
        for (v, &d) in a.0.iter().enumerate() {
            let d = d as usize;
            for i in 0..d {
                let mut g = Mat::identity(d);
                g.set(i, i, lambda);
                let inv = g.inverse(&f).unwrap();
                gens.push((v, g, inv));
                for j in 0..d {
                    if i != j {
                        let mut g = Mat::identity(d);
                        g.set(i, j, 1);
                        let inv = g.inverse(&f).unwrap();
                        gens.push((v, g, inv));
                    }
                }
            }
        }
        let mut seen = vec![0u64; n.div_ceil(64)];
        let mark = |seen: &mut Vec<u64>, i: usize| -> bool {
            let (w, b) = (i / 64, 1u64 << (i % 64));
            let fresh = seen[w] & b == 0;
            seen[w] |= b;
            fresh
        };
        let mut out = Vec::new();
        for start in 0..n {
            if !mark(&mut seen, start) {
                continue;
            }
            let rep0 = FqRep::from_index(&self.quiver, f, a, start as u64);
            let mut orbit = 1u128;
            let mut queue = VecDeque::from([rep0.clone()]);
            while let Some(x) = queue.pop_front() {
                for (v, g, gi) in &gens {
                    let y = x.act_at(*v, g, gi);
                    if mark(&mut seen, y.point_index() as usize) {
                        orbit += 1;
                        queue.push_back(y);
                    }
                }
            }
            assert_eq!(gl % orbit, 0, "orbit size must divide |GL_a|");
            let aut = gl / orbit;
            if let Ok(count) = self.aut_count(&rep0) {
                assert_eq!(count, aut, "orbit-stabilizer failed for {rep0:?}");
            }
            out.push(IsoClass { representative: rep0, orbit_size: orbit, aut_count: aut });
        }
        Ok(out)
    }

    /// `F^W_{UV}`: subrepresentations of `W` isomorphic to `V` with quotient isomorphic to `U`.
    pub fn hall_number(&self, u: &FqRep, v: &FqRep, w: &FqRep) -> Result<u64> {
        if &u.dim().add(v.dim()) != w.dim() {
            return Err(Error::DimensionMismatch(format!("{} + {} != {}", u.dim(), v.dim(), w.dim())));
        }
        let mut count = 0;
        for l in subreps(w, v.dim())? {
            if self.is_isomorphic(&restriction(w, &l), v)? && self.is_isomorphic(&quotient(w, &l), u)? {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Middle terms of all `|Ext(U, V)|` extensions `0 -> V -> W -> U -> 0`, grouped by isomorphism class.
    pub fn ext_middle_distribution(&self, u: &FqRep, v: &FqRep) -> Result<Vec<(FqRep, u128)>> {
        let ext = ext_space(u, v)?;
        self.charge(self.field.order_pow(ext.dim as u64))?;
        let template: Vec<Mat> =
            self.quiver.arrows().iter().map(|&(t, h)| Mat::zeros(v.vdim(h), u.vdim(t))).collect();
        let mut out: Vec<(FqRep, u128)> = Vec::new();
        for c in rep::combinations(&self.field, &ext.basis, &template) {
            let w = middle_term(u, v, &c)?;
            let mut found = false;
            for (r, k) in out.iter_mut() {
                if self.is_isomorphic(r, &w)? {
                    *k += 1;
                    found = true;
                    break;
                }
            }
            if !found {
                out.push((w, 1));
            }
        }
        Ok(out)
    }

    /// `sum_{M semistable} weight(M) / a_M` over isomorphism classes of dimension `a`.
    pub fn semistable_sum(&self, a: &DimVector, mu: &Slope, weight: impl Fn(&FqRep) -> Result<u64>) -> Result<BigRational> {
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for c in self.iso_classes(a)? {
            if is_semistable(&c.representative, mu)? {
                let w = weight(&c.representative)?;
                acc += BigRational::new(BigInt::from(w), BigInt::from(c.aut_count));
            }
        }
        Ok(acc)
    }

    /// `sum_{M semistable} 1 / a_M`.
    pub fn semistable_mass(&self, a: &DimVector, mu: &Slope) -> Result<BigRational> {
        self.semistable_sum(a, mu, |_| Ok(1))
    }

    /// `sum_{M semistable} |Gr_gamma(M)| / a_M`.
    pub fn grassmannian_mass(&self, a: &DimVector, gamma: &DimVector, mu: &Slope) -> Result<BigRational> {
        self.semistable_sum(a, mu, |m| gr_count(m, gamma))
    }

    /// `sum_{M semistable} |Fl(M)| / a_M` with flag parts listed bottom first.
    pub fn flag_mass(&self, parts: &[DimVector], mu: &Slope) -> Result<BigRational> {
        let a = parts.iter().fold(DimVector::zero(self.quiver.num_vertices()), |acc, p| acc.add(p));
        self.semistable_sum(&a, mu, |m| flag_count(m, parts))
    }
}

fn pow_mod(x: u8, k: u32, f: &Fq) -> u8 {
    (0..k).fold(1, |acc, _| f.mul(acc, x))
}

#[cfg(test)]
mod tests;
