//! Explicit representations over `F_p`, Hom and Ext.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

use super::fp::{Fq, Mat};

/// One matrix per arrow, of shape `dim(head) x dim(tail)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqRep {
    quiver: Arc<Quiver>,
    field: Fq,
    dim: DimVector,
    mats: Vec<Mat>,
}

impl FqRep {
    pub fn new(quiver: Arc<Quiver>, field: Fq, dim: DimVector, mats: Vec<Mat>) -> Result<Self> {
        if dim.len() != quiver.num_vertices() || mats.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch("representation does not fit the quiver".into()));
        }
        for (m, &(t, h)) in mats.iter().zip(quiver.arrows()) {
            if m.rows() != dim.0[h] as usize || m.cols() != dim.0[t] as usize {
                return Err(Error::DimensionMismatch(format!("arrow {t}->{h} needs a {}x{} matrix", dim.0[h], dim.0[t])));
            }
            if m.data().iter().any(|&x| x as u32 >= field.p()) {
                return Err(Error::InvalidArgument(format!("entry outside F_{}", field.p())));
            }
        }
        Ok(FqRep { quiver, field, dim, mats })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Fq, dim: DimVector) -> Self {
        let mats = quiver.arrows().iter().map(|&(t, h)| Mat::zeros(dim.0[h] as usize, dim.0[t] as usize)).collect();
        FqRep { quiver, field, dim, mats }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(quiver: Arc<Quiver>, field: Fq, v: usize) -> Self {
        let n = quiver.num_vertices();
        Self::zero(quiver, field, DimVector::unit(n, v))
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn vdim(&self, v: usize) -> usize {
        self.dim.0[v] as usize
    }

    fn same_setting(&self, other: &FqRep) -> Result<()> {
        if self.quiver != other.quiver || self.field != other.field {
            return Err(Error::InvalidArgument("representations over different quivers or fields".into()));
        }
        Ok(())
    }

    /// Block-diagonal sum, `self` in the first coordinates.
    pub fn direct_sum(&self, other: &FqRep) -> Result<FqRep> {
        self.same_setting(other)?;
        let dim = self.dim.add(&other.dim);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = Mat::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(a.rows() + i, a.cols() + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(FqRep { quiver: self.quiver.clone(), field: self.field, dim, mats })
    }

    /// Index of this point of `Rep_a(F_p)` in base `p`, arrows in order, entries row-major.
    pub fn point_index(&self) -> u64 {
        let p = self.field.p() as u64;
        let mut idx = 0u64;
        for m in self.mats.iter().rev() {
            for &x in m.data().iter().rev() {
                idx = idx * p + x as u64;
            }
        }
        idx
    }

    pub(crate) fn from_index(quiver: &Arc<Quiver>, field: Fq, dim: &DimVector, mut idx: u64) -> FqRep {
        let p = field.p() as u64;
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(t, h)| {
                let (r, c) = (dim.0[h] as usize, dim.0[t] as usize);
                let data = (0..r * c)
                    .map(|_| {
                        let d = (idx % p) as u8;
                        idx /= p;
                        d
                    })
                    .collect();
                Mat::from_rows(r, c, data).unwrap()
            })
            .collect();
        FqRep { quiver: quiver.clone(), field, dim: dim.clone(), mats }
    }

    /// `g . M` with `M_a -> g_h M_a g_t^(-1)`, where `g` is `g_v` at vertex `v` and the identity elsewhere.
    pub(crate) fn act_at(&self, v: usize, g: &Mat, g_inv: &Mat) -> FqRep {
        let f = self.field;
        let mats = self
            .mats
            .iter()
            .zip(self.quiver.arrows())
            .map(|(m, &(t, h))| {
                let mut m = m.clone();
                if h == v {
                    m = g.mul(&f, &m);
                }
                if t == v {
                    m = m.mul(&f, g_inv);
                }
                m
            })
            .collect();
        FqRep { quiver: self.quiver.clone(), field: self.field, dim: self.dim.clone(), mats }
    }
}

/// A family of linear maps `f_v : M_v -> N_v`, one per vertex.
pub type VertexMaps = Vec<Mat>;

/// `Ext^1(M, N)` as a complement of the image of `Hom(M_v, N_v) -> Hom(M_ta, N_ha)`.
#[derive(Debug, Clone)]
pub struct ExtSpace {
    pub dim: usize,
    /// Cocycles `c_a : M_ta -> N_ha` whose classes form a basis.
    pub basis: Vec<Vec<Mat>>,
}

/// The matrix of `(f_v) -> (f_ha M_a - N_a f_ta)_a`.
fn hom_map(m: &FqRep, n: &FqRep) -> (Mat, Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>) {
    let f = m.field;
    let q = &m.quiver;
    let nv = q.num_vertices();
    let mut unk_off = vec![0usize; nv + 1];
    for v in 0..nv {
        unk_off[v + 1] = unk_off[v] + n.vdim(v) * m.vdim(v);
    }
    let arrows = q.arrows();
    let mut eq_off = vec![0usize; arrows.len() + 1];
    for (i, &(t, h)) in arrows.iter().enumerate() {
        eq_off[i + 1] = eq_off[i] + n.vdim(h) * m.vdim(t);
    }
    let mut phi = Mat::zeros(eq_off[arrows.len()], unk_off[nv]);
    for (ai, &(t, h)) in arrows.iter().enumerate() {
        let (ma, na) = (&m.mats[ai], &n.mats[ai]);
        let cols = m.vdim(t);
        for i in 0..n.vdim(h) {
            for j in 0..cols {
                let row = eq_off[ai] + i * cols + j;
                // f_h[i][k] M_a[k][j]
                for k in 0..m.vdim(h) {
                    let col = unk_off[h] + i * m.vdim(h) + k;
                    phi.set(row, col, f.add(phi.get(row, col), ma.get(k, j)));
                }
                // - N_a[i][k] f_t[k][j]
                for k in 0..n.vdim(t) {
                    let col = unk_off[t] + k * m.vdim(t) + j;
                    phi.set(row, col, f.sub(phi.get(row, col), na.get(i, k)));
                }
            }
        }
    }
    let unk = (0..nv).map(|v| (unk_off[v], n.vdim(v), m.vdim(v))).collect();
    let eqs = arrows.iter().enumerate().map(|(i, &(t, h))| (eq_off[i], n.vdim(h), m.vdim(t))).collect();
    (phi, unk, eqs)
}

fn split(x: &[u8], blocks: &[(usize, usize, usize)]) -> Vec<Mat> {
    blocks.iter().map(|&(off, r, c)| Mat::from_rows(r, c, x[off..off + r * c].to_vec()).unwrap()).collect()
}

fn check_euler(m: &FqRep, n: &FqRep, hom: usize, ext: usize) {
    let e = m.quiver.euler_additive(&m.dim, &n.dim).expect("same quiver");
    assert_eq!(hom as i64 - ext as i64, e, "dim Hom - dim Ext must equal the Euler form");
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(m: &FqRep, n: &FqRep) -> Result<Vec<VertexMaps>> {
    m.same_setting(n)?;
    let (phi, unk, eqs) = hom_map(m, n);
    let basis: Vec<VertexMaps> = phi.nullspace(&m.field).iter().map(|x| split(x, &unk)).collect();
    let ext = eqs.iter().map(|e| e.1 * e.2).sum::<usize>() - phi.rank(&m.field);
    check_euler(m, n, basis.len(), ext);
    Ok(basis)
}

/// `Ext^1(M, N)` with cocycle representatives.
pub fn ext_space(m: &FqRep, n: &FqRep) -> Result<ExtSpace> {
    m.same_setting(n)?;
    let f = m.field;
    let (phi, _, eqs) = hom_map(m, n);
    let (_, piv) = phi.transpose().rref(&f);
    let total = phi.rows();
    let basis: Vec<Vec<Mat>> = (0..total)
        .filter(|c| !piv.contains(c))
        .map(|c| {
            let mut x = vec![0u8; total];
            x[c] = 1;
            split(&x, &eqs)
        })
        .collect();
    check_euler(m, n, phi.cols() - piv.len(), basis.len());
    Ok(ExtSpace { dim: basis.len(), basis })
}

/// The extension `0 -> N -> W -> M -> 0` of the cocycle `c`: `W_a = [[N_a, c_a], [0, M_a]]`.
pub fn middle_term(m: &FqRep, n: &FqRep, c: &[Mat]) -> Result<FqRep> {
    m.same_setting(n)?;
    let mut w = n.direct_sum(m)?;
    for (ai, &(t, h)) in m.quiver.arrows().iter().enumerate() {
        let ca = &c[ai];
        if ca.rows() != n.vdim(h) || ca.cols() != m.vdim(t) {
            return Err(Error::DimensionMismatch("cocycle shape".into()));
        }
        for i in 0..ca.rows() {
            for j in 0..ca.cols() {
                w.mats[ai].set(i, n.vdim(t) + j, ca.get(i, j));
            }
        }
    }
    Ok(w)
}

/// All `p^k` linear combinations of `k` vectors of maps.
pub(crate) fn combinations(f: &Fq, basis: &[Vec<Mat>], template: &[Mat]) -> impl Iterator<Item = Vec<Mat>> {
    let p = f.p() as u64;
    let k = basis.len() as u32;
    let basis = basis.to_vec();
    let template = template.to_vec();
    let f = *f;
    (0..p.pow(k)).map(move |mut idx| {
        let mut out = template.clone();
        for b in &basis {
            let c = (idx % p) as u8;
            idx /= p;
            if c == 0 {
                continue;
            }
            for (o, bm) in out.iter_mut().zip(b) {
                let data: Vec<u8> = o.data().iter().zip(bm.data()).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect();
                *o = Mat::from_rows(o.rows(), o.cols(), data).unwrap();
            }
        }
        out
    })
}

pub(crate) fn zero_maps(m: &FqRep, n: &FqRep) -> Vec<Mat> {
    (0..m.quiver.num_vertices()).map(|v| Mat::zeros(n.vdim(v), m.vdim(v))).collect()
}
