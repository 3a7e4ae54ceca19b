//! Dynkin quivers and their indecomposables via Auslander-Reiten knitting.

use serde::{Deserialize, Serialize};

use super::{DimVector, Quiver};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl DynkinType {
    fn num_positive_roots(self, n: usize) -> usize {
        match (self, n) {
            (DynkinType::A, n) => n * (n + 1) / 2,
            (DynkinType::D, n) => n * (n - 1),
            (DynkinType::E, 6) => 36,
            (DynkinType::E, 7) => 63,
            _ => 120,
        }
    }
}

/// A standard orientation: a path `1 -> 2 -> ... -> m` plus one extra vertex for `D` and `E`.
pub fn dynkin_quiver(ty: DynkinType, n: usize) -> Result<Quiver> {
    let path = |m: usize| (1..m).map(|i| (i - 1, i)).collect::<Vec<_>>();
    match ty {
        DynkinType::A if n >= 1 => Quiver::new(n, path(n)),
        DynkinType::D if n >= 4 => {
            let mut arrows = path(n - 1);
            arrows.push((n - 3, n - 1));
            Quiver::new(n, arrows)
        }
        DynkinType::E if (6..=8).contains(&n) => {
            let mut arrows = path(n - 1);
            arrows.push((2, n - 1));
            Quiver::new(n, arrows)
        }
        _ => Err(Error::NotDynkin(format!("{ty:?}{n}"))),
    }
}

/// Recognize the underlying Dynkin diagram of a quiver.
pub fn dynkin_type(q: &Quiver) -> Result<(DynkinType, usize)> {
    let n = q.num_vertices();
    let fail = |why: &str| Err(Error::NotDynkin(why.to_string()));
    if n == 0 {
        return fail("empty quiver");
    }
    let mut adj = vec![Vec::new(); n];
    for &(t, h) in q.arrows() {
        if t == h {
            return fail("loop");
        }
        if adj[t].contains(&h) {
            return fail("multiple edges");
        }
        adj[t].push(h);
        adj[h].push(t);
    }
    if q.arrows().len() != n - 1 {
        return fail("underlying graph is not a tree");
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return fail("not connected");
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return Ok((DynkinType::A, n));
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return fail("more than one branch point");
    }
    let b = branch[0];
    let mut arms: Vec<usize> = adj[b]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Ok((DynkinType::D, n)),
        [1, 2, 2..=4] => Ok((DynkinType::E, n)),
        _ => fail("arm lengths are not of type D or E"),
    }
}

/// Dimension vectors of the indecomposables, read off the Auslander-Reiten quiver
/// layer by layer (projectives first, sinks before sources within a layer), so that
/// `Hom(E_i, E_j) = 0` for `i > j` and `Ext(E_i, E_j) = 0` for `i <= j`.
pub fn dynkin_indecomposables(q: &Quiver) -> Result<Vec<DimVector>> {
    let (ty, rank) = dynkin_type(q)?;
    let n = q.num_vertices();
    let topo = q.topological_order().expect("trees are acyclic");
    let order: Vec<usize> = topo.into_iter().rev().collect();

    // P_v(w) = number of paths v -> w.
    let mut proj: Vec<Vec<i64>> = vec![vec![0; n]; n];
    for &v in &order {
        proj[v][v] = 1;
        for &(t, h) in q.arrows() {
            if t == v {
                for w in 0..n {
                    proj[v][w] += proj[h][w];
                }
            }
        }
    }

    let mut out: Vec<DimVector> = Vec::new();
    let mut current: Vec<Option<Vec<i64>>> = proj.into_iter().map(Some).collect();
    for &v in &order {
        out.push(to_dim(current[v].as_ref().unwrap()));
    }
    let zero = vec![0i64; n];
    loop {
        let mut next: Vec<Option<Vec<i64>>> = vec![None; n];
        let mut any = false;
        for &v in &order {
            if current[v].is_none() {
                continue;
            }
            let mut d = vec![0i64; n];
            for &(t, h) in q.arrows() {
                if h == v {
                    add(&mut d, current[t].as_ref().unwrap_or(&zero), 1);
                }
                if t == v {
                    add(&mut d, next[h].as_ref().unwrap_or(&zero), 1);
                }
            }
            add(&mut d, current[v].as_ref().unwrap(), -1);
            if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) {
                out.push(to_dim(&d));
                next[v] = Some(d);
                any = true;
            }
        }
        if !any {
            break;
        }
        current = next;
    }
    let expected = ty.num_positive_roots(rank);
    if out.len() != expected {
        return Err(Error::NotDynkin(format!("knitting produced {} roots, expected {expected}", out.len())));
    }
    Ok(out)
}

fn add(acc: &mut [i64], x: &[i64], sign: i64) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += sign * b;
    }
}

fn to_dim(d: &[i64]) -> DimVector {
    DimVector(d.iter().map(|&x| x as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_order() {
        let roots = dynkin_indecomposables(&Quiver::a_n(2)).unwrap();
        assert_eq!(roots, vec![DimVector(vec![0, 1]), DimVector(vec![1, 1]), DimVector(vec![1, 0])]);
        assert_eq!(dynkin_indecomposables(&Quiver::a_n(1)).unwrap(), vec![DimVector(vec![1])]);
    }

    #[test]
    fn root_counts_for_all_types() {
        for n in 1..7 {
            assert_eq!(dynkin_indecomposables(&Quiver::a_n(n)).unwrap().len(), n * (n + 1) / 2);
        }
        for n in 4..8 {
            let q = dynkin_quiver(DynkinType::D, n).unwrap();
            assert_eq!(dynkin_type(&q).unwrap(), (DynkinType::D, n));
            assert_eq!(dynkin_indecomposables(&q).unwrap().len(), n * (n - 1));
        }
        for (n, r) in [(6, 36), (7, 63), (8, 120)] {
            let q = dynkin_quiver(DynkinType::E, n).unwrap();
            assert_eq!(dynkin_type(&q).unwrap(), (DynkinType::E, n));
            assert_eq!(dynkin_indecomposables(&q).unwrap().len(), r);
        }
    }

    #[test]
    fn alternating_orientation() {
        let q = Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap();
        let roots = dynkin_indecomposables(&q).unwrap();
        assert_eq!(roots.len(), 6);
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn rejects_non_dynkin() {
        assert!(dynkin_indecomposables(&Quiver::kronecker(2)).is_err());
        let d4_tilde = Quiver::new(5, vec![(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert!(dynkin_type(&d4_tilde).is_err());
        let e6_tilde = Quiver::new(7, vec![(0, 1), (1, 2), (3, 2), (4, 3), (5, 2), (6, 5)]).unwrap();
        assert!(dynkin_type(&e6_tilde).is_err());
    }
}
