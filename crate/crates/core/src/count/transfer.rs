//! Transfer-matrix evaluation of the Grassmannian count.
//!
//! Nodes are `(0,0)`, `(a', c')` with `0 < a' < a`, `mu(a') < mu(a)` and
//! `c' <= min(a', c)`, and `(a, c)`. The entry from node `i` to node `j` is
//! `<c_i, b_k> / <a_i, a_k> r_{b_k, c_k}` where `a_k = a_j - a_i`,
//! `c_k = c_j - c_i` and `b_k = a_k - c_k` must all be nonnegative. The matrix is
//! unitriangular once nodes are sorted by dimension; the count is minus the
//! `((0,0), (a,c))` entry of its inverse, which equals the corresponding cofactor
//! of the transposed matrix.

use crate::error::{Error, Result};
use crate::exactq::{QRat, VPoly};
use crate::quiver::{DimVector, Quiver, Slope};

use super::engine::Engine;

/// `r^ss_{a-c, c}` computed by back-substitution through the transfer matrix.
pub fn transfer_matrix_grassmannian(q: &Quiver, a: &DimVector, c: &DimVector, mu: &Slope) -> Result<QRat> {
    if !c.le(a) || a.len() != q.num_vertices() || c.len() != a.len() {
        return Err(Error::InvalidArgument(format!("need 0 <= gamma = {c} <= alpha = {a}")));
    }
    let m = mu.value(a)?;
    let n = q.num_vertices();
    let mut nodes: Vec<(DimVector, DimVector)> = vec![(DimVector::zero(n), DimVector::zero(n))];
    for ad in a.sub_vectors() {
        if ad.is_zero() || &ad == a || mu.value(&ad)? >= m {
            continue;
        }
        for cd in ad.meet(c).sub_vectors() {
            nodes.push((ad.clone(), cd));
        }
    }
    nodes.push((a.clone(), c.clone()));
    nodes[1..].sort_by_key(|(x, y)| (x.total(), x.clone(), y.clone()));

    let mut eng = Engine::new(q, mu, 2, None);
    let last = nodes.len() - 1;
    // x[i] = |GL_(a - a_i)| (M^-1)_{i, last}
    let mut x: Vec<VPoly> = vec![VPoly::zero(); nodes.len()];
    x[last] = VPoly::one();
    for i in (0..last).rev() {
        let (ai, ci) = &nodes[i];
        let mut acc = VPoly::zero();
        for j in i + 1..=last {
            if x[j].is_zero() {
                continue;
            }
            let (aj, cj) = &nodes[j];
            let (Some(ak), Some(ck)) = (aj.checked_sub(ai), cj.checked_sub(ci)) else { continue };
            let Some(bk) = ak.checked_sub(&ck) else { continue };
            let rest = a.checked_sub(aj).unwrap();
            let e = q.euler_additive(ci, &bk)? - q.euler_additive(ai, &ak)? - q.euler_additive(&bk, &ck)?;
            let rep = (q.rep_space_dim(&bk) + q.rep_space_dim(&ck)) as i64;
            let w = &eng.gl_ratio(&ak, &rest) * &eng.gl_ratio(&bk, &ck);
            acc += &(&w * &x[j]).shift(2 * (e + rep));
        }
        x[i] = -acc;
    }
    QRat::new(-x[0].clone(), q.gl_alpha_order(a))
}
