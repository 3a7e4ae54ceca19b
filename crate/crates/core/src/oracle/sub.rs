//! Subrepresentations, Grassmannians, flags, semistability and filtration sums.

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Slope, Weight};

use super::fp::{reduce, subspaces, Mat};
use super::rep::FqRep;

/// A subrepresentation given by an RREF basis of each `L_v` inside `M_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubRep {
    pub spaces: Vec<(Mat, Vec<usize>)>,
}

impl SubRep {
    pub fn dim(&self) -> DimVector {
        DimVector(self.spaces.iter().map(|(m, _)| m.rows() as u32).collect())
    }

    pub fn contains(&self, m: &FqRep, other: &SubRep) -> bool {
        let f = m.field();
        self.spaces.iter().zip(&other.spaces).all(|((b, piv), (ob, _))| {
            (0..ob.rows()).all(|r| reduce(&f, b, piv, ob.row(r)).iter().all(|&x| x == 0))
        })
    }
}

fn column(m: &Mat, j: usize) -> Vec<u8> {
    (0..m.rows()).map(|i| m.get(i, j)).collect()
}

fn invariant(m: &FqRep, spaces: &[(Mat, Vec<usize>)], ai: usize) -> bool {
    let f = m.field();
    let (t, h) = m.quiver().arrows()[ai];
    let (bt, _) = &spaces[t];
    let (bh, ph) = &spaces[h];
    (0..bt.rows()).all(|r| {
        let img = m.mats()[ai].apply(&f, bt.row(r));
        reduce(&f, bh, ph, &img).iter().all(|&x| x == 0)
    })
}

/// All subrepresentations of `M` of dimension `gamma`.
pub fn subreps(m: &FqRep, gamma: &DimVector) -> Result<Vec<SubRep>> {
    if gamma.len() != m.dim().len() || !gamma.le(m.dim()) {
        return Err(Error::InvalidArgument(format!("gamma = {gamma} is not below {}", m.dim())));
    }
    let f = m.field();
    let n = m.dim().len();
    let choices: Vec<Vec<(Mat, Vec<usize>)>> =
        (0..n).map(|v| subspaces(&f, m.vdim(v), gamma.0[v] as usize)).collect();
    // arrows to check once vertex v is fixed
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ai, &(t, h)) in m.quiver().arrows().iter().enumerate() {
        due[t.max(h)].push(ai);
    }
    let mut out = Vec::new();
    let mut cur: Vec<(Mat, Vec<usize>)> = Vec::with_capacity(n);
    dfs(m, &choices, &due, &mut cur, &mut out);
    Ok(out)
}

fn dfs(
    m: &FqRep,
    choices: &[Vec<(Mat, Vec<usize>)>],
    due: &[Vec<usize>],
    cur: &mut Vec<(Mat, Vec<usize>)>,
    out: &mut Vec<SubRep>,
) {
    let v = cur.len();
    if v == choices.len() {
        out.push(SubRep { spaces: cur.clone() });
        return;
    }
    for s in &choices[v] {
        cur.push(s.clone());
        if due[v].iter().all(|&ai| invariant(m, cur, ai)) {
            dfs(m, choices, due, cur, out);
        }
        cur.pop();
    }
}

/// Every subrepresentation of `M`, sorted by total dimension.
pub fn all_subreps(m: &FqRep) -> Vec<SubRep> {
    let mut out = Vec::new();
    let mut dims = m.dim().sub_vectors();
    dims.sort_by_key(|d| d.total());
    for g in dims {
        out.extend(subreps(m, &g).expect("gamma below dim"));
    }
    out
}

/// The induced representation on `L`.
pub fn restriction(m: &FqRep, l: &SubRep) -> FqRep {
    let f = m.field();
    let mats = m
        .quiver()
        .arrows()
        .iter()
        .zip(m.mats())
        .map(|(&(t, h), a)| {
            let (bt, _) = &l.spaces[t];
            let (_, ph) = &l.spaces[h];
            let mut out = Mat::zeros(ph.len(), bt.rows());
            for i in 0..bt.rows() {
                let img = a.apply(&f, bt.row(i));
                for (r, &pc) in ph.iter().enumerate() {
                    out.set(r, i, img[pc]);
                }
            }
            out
        })
        .collect();
    FqRep::new(m.quiver().clone(), f, l.dim(), mats).expect("restriction shapes")
}

/// The quotient `M / L`, in coordinates at the non-pivot positions of each `L_v`.
pub fn quotient(m: &FqRep, l: &SubRep) -> FqRep {
    let f = m.field();
    let comp: Vec<Vec<usize>> =
        (0..m.dim().len()).map(|v| (0..m.vdim(v)).filter(|c| !l.spaces[v].1.contains(c)).collect()).collect();
    let mats = m
        .quiver()
        .arrows()
        .iter()
        .zip(m.mats())
        .map(|(&(t, h), a)| {
            let (bh, ph) = &l.spaces[h];
            let mut out = Mat::zeros(comp[h].len(), comp[t].len());
            for (i, &j) in comp[t].iter().enumerate() {
                let img = reduce(&f, bh, ph, &column(a, j));
                for (r, &c) in comp[h].iter().enumerate() {
                    out.set(r, i, img[c]);
                }
            }
            out
        })
        .collect();
    let dim = m.dim().checked_sub(&l.dim()).unwrap();
    FqRep::new(m.quiver().clone(), f, dim, mats).expect("quotient shapes")
}

/// `|Gr_gamma(M)|`.
pub fn gr_count(m: &FqRep, gamma: &DimVector) -> Result<u64> {
    Ok(subreps(m, gamma)?.len() as u64)
}

/// Number of flags `0 = L_0 < L_1 < ... < L_t = M` with `L_i / L_(i-1)` of
/// dimension `parts[i-1]` (bottom first).
pub fn flag_count(m: &FqRep, parts: &[DimVector]) -> Result<u64> {
    let total = parts.iter().fold(DimVector::zero(m.dim().len()), |acc, p| acc.add(p));
    if parts.is_empty() || &total != m.dim() {
        return Err(Error::InvalidArgument(format!("flag parts must sum to {}", m.dim())));
    }
    flag_rec(m, parts)
}

fn flag_rec(m: &FqRep, parts: &[DimVector]) -> Result<u64> {
    if parts.len() == 1 {
        return Ok(1);
    }
    let sub = m.dim().checked_sub(parts.last().unwrap()).unwrap();
    let mut acc = 0;
    for l in subreps(m, &sub)? {
        acc += flag_rec(&restriction(m, &l), &parts[..parts.len() - 1])?;
    }
    Ok(acc)
}

/// King's criterion: `sigma(M) = 0` and `sigma(L) <= 0` for every subrepresentation.
pub fn is_semistable_king(m: &FqRep, sigma: &Weight) -> bool {
    sigma.apply(m.dim()) == 0 && all_subreps(m).iter().all(|l| sigma.apply(&l.dim()) <= 0)
}

/// `mu(L) <= mu(M)` for every nonzero subrepresentation.
pub fn is_semistable(m: &FqRep, mu: &Slope) -> Result<bool> {
    if m.dim().is_zero() {
        return Ok(true);
    }
    let top = mu.value(m.dim())?;
    for l in all_subreps(m) {
        let d = l.dim();
        if !d.is_zero() && mu.value(&d)? > top {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `mu(L) < mu(M)` for every proper nonzero subrepresentation.
pub fn is_stable(m: &FqRep, mu: &Slope) -> Result<bool> {
    if m.dim().is_zero() {
        return Ok(false);
    }
    let top = mu.value(m.dim())?;
    for l in all_subreps(m) {
        let d = l.dim();
        if !d.is_zero() && &d != m.dim() && mu.value(&d)? >= top {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Where the filtration steps may live.
#[derive(Debug, Clone)]
pub enum Category {
    All,
    /// Semistable representations of the slope of `M`.
    FixedSlope(Slope),
}

/// `sum_i (-1)^i F_i(M)` over chains `0 = L_0 < ... < L_i = M` of strict inclusions.
pub fn filtration_alt_sum(m: &FqRep, cat: &Category) -> Result<i128> {
    let subs = all_subreps(m);
    let keep: Vec<bool> = match cat {
        Category::All => vec![true; subs.len()],
        Category::FixedSlope(mu) => {
            if m.dim().is_zero() {
                return Ok(1);
            }
            let top = mu.value(m.dim())?;
            let mut k = Vec::with_capacity(subs.len());
            for l in &subs {
                let d = l.dim();
                k.push(d.is_zero() || &d == m.dim() || mu.value(&d)? == top);
            }
            k
        }
    };
    let idx: Vec<usize> = (0..subs.len()).filter(|&i| keep[i]).collect();
    // g(L) = -sum_{L' < L} g(L'), g(0) = 1
    let mut g: Vec<i128> = Vec::with_capacity(idx.len());
    for (a, &i) in idx.iter().enumerate() {
        if subs[i].dim().is_zero() {
            g.push(1);
            continue;
        }
        let mut s = 0;
        for (b, &j) in idx[..a].iter().enumerate() {
            if subs[j].dim() != subs[i].dim() && subs[i].contains(m, &subs[j]) {
                s += g[b];
            }
        }
        g.push(-s);
    }
    Ok(*g.last().unwrap())
}
