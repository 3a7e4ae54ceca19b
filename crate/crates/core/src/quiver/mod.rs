//! Quivers, dimension vectors, Euler forms and slope functions.

mod dynkin;
mod format;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{gl_order, QRat, VPoly};

pub use dynkin::{dynkin_indecomposables, dynkin_quiver, dynkin_type, DynkinType};
pub use format::{parse_quiver_file, QuiverFile};

/// A finite quiver. Vertices are indexed `0..n` in a fixed order and carry display names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<(usize, usize)>,
    acyclic: bool,
}

/// Nonnegative integers per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

/// Integer weight per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

/// Exact slope value.
pub type SlopeValue = Ratio<i64>;

/// `mu = sigma / theta` with `theta` positive on every vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Slope {
    sigma: Weight,
    theta: Weight,
}

/// `E[u][v] = delta_uv - #(arrows u -> v)`.
pub type EulerMatrix = Vec<Vec<i64>>;

impl Quiver {
    /// Quiver on vertices `0..n` named `1..=n`.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_names((1..=n).map(|i| i.to_string()).collect(), arrows)
    }

    pub fn with_names(names: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        if let Some(&(t, h)) = arrows.iter().find(|&&(t, h)| t >= n || h >= n) {
            return Err(Error::InvalidArgument(format!("arrow {t}->{h} has an endpoint outside 0..{n}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(Error::InvalidArgument(format!("duplicate vertex {dup}")));
        }
        let acyclic = topo_order(n, &arrows).is_some();
        Ok(Quiver { names, arrows, acyclic })
    }

    /// Generalized Kronecker quiver `K_m`: two vertices, `m` arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Self {
        Self::new(2, vec![(0, 1); m]).unwrap()
    }

    /// Equioriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn a_n(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    /// Named quivers: `K<m>`, `A<n>`, `D<n>`, `E6`/`E7`/`E8` (equioriented).
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown quiver name {name}"));
        let (head, tail) = name.split_at(1.min(name.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "K" => Ok(Self::kronecker(n)),
            "A" => dynkin_quiver(DynkinType::A, n),
            "D" => dynkin_quiver(DynkinType::D, n),
            "E" => dynkin_quiver(DynkinType::E, n),
            _ => Err(bad()),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Arrows as `(tail, head)` vertex indices.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Vertices ordered so that every arrow goes from an earlier to a later vertex.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        topo_order(self.num_vertices(), &self.arrows)
    }

    pub fn arrow_count(&self, u: usize, v: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (u, v)).count()
    }

    fn check(&self, a: &DimVector) -> Result<()> {
        if a.0.len() != self.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} on a quiver with {} vertices",
                a.0.len(),
                self.num_vertices()
            )));
        }
        Ok(())
    }

    pub fn euler_matrix(&self) -> EulerMatrix {
        let n = self.num_vertices();
        let mut e = vec![vec![0i64; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(t, h) in &self.arrows {
            e[t][h] -= 1;
        }
        e
    }

    /// `B = E - E^T`.
    pub fn b_matrix(&self) -> Vec<Vec<i64>> {
        let e = self.euler_matrix();
        let n = e.len();
        (0..n).map(|i| (0..n).map(|j| e[i][j] - e[j][i]).collect()).collect()
    }

    /// Euler form on integer vectors (entries may be negative).
    pub fn euler_int(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        diag - self.arrows.iter().map(|&(t, h)| a[t] * b[h]).sum::<i64>()
    }

    /// `<a, b>_a = sum_v a(v) b(v) - sum_arrows a(t) b(h)`.
    pub fn euler_additive(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.euler_int(&a.to_i64(), &b.to_i64()))
    }

    /// `q^<a, b>_a`.
    pub fn euler_mult(&self, a: &DimVector, b: &DimVector) -> Result<QRat> {
        Ok(QRat::v_pow(2 * self.euler_additive(a, b)?))
    }

    /// `sum_arrows a(t) a(h)`, the dimension of the representation space.
    pub fn rep_space_dim(&self, a: &DimVector) -> u64 {
        self.arrows.iter().map(|&(t, h)| a.0[t] as u64 * a.0[h] as u64).sum()
    }

    /// `|Rep_a(Q)(F_q)| = q^(sum a(t) a(h))`.
    pub fn rep_space_order(&self, a: &DimVector) -> Result<VPoly> {
        self.check(a)?;
        Ok(VPoly::q_pow(self.rep_space_dim(a) as i64))
    }

    /// `|GL_a(F_q)| = prod_v |GL_{a(v)}(F_q)|`.
    pub fn gl_alpha_order(&self, a: &DimVector) -> VPoly {
        a.0.iter().fold(VPoly::one(), |acc, &n| &acc * &gl_order(n))
    }

    /// Default slope: `theta = (1, ..., 1)`.
    pub fn slope(&self, sigma: Weight) -> Result<Slope> {
        Slope::new(sigma, Weight(vec![1; self.num_vertices()]))
    }
}

fn topo_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, h) in arrows {
        indeg[h] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        let mut next = Vec::new();
        for &(t, h) in arrows {
            if t == v {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    next.push(h);
                }
            }
        }
        next.sort_unstable_by(|a, b| b.cmp(a));
        next.dedup();
        ready.extend(next);
        ready.sort_unstable_by(|a, b| b.cmp(a));
    }
    (order.len() == n).then_some(order)
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver(vertices: {}; arrows:", self.names.join(" "))?;
        for (i, &(t, h)) in self.arrows.iter().enumerate() {
            write!(f, "{} {}->{}", if i == 0 { "" } else { "," }, self.names[t], self.names[h])?;
        }
        write!(f, ")")
    }
}

impl DimVector {
    pub fn new(v: Vec<u32>) -> Self {
        DimVector(v)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The simple dimension vector at vertex `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(DimVector)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// All `g` with `0 <= g <= self`, in lexicographic order (zero first, `self` last).
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector::zero(self.len())];
        for i in 0..self.len() {
            let mut next = Vec::with_capacity(out.len() * (self.0[i] as usize + 1));
            for g in &out {
                for x in 0..=self.0[i] {
                    let mut h = g.clone();
                    h.0[i] = x;
                    next.push(h);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            write!(f, "{}{x}", if i == 0 { "" } else { "," })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

impl Weight {
    pub fn apply(&self, a: &DimVector) -> i64 {
        self.0.iter().zip(&a.0).map(|(w, &x)| w * x as i64).sum()
    }

    pub fn apply_int(&self, a: &[i64]) -> i64 {
        self.0.iter().zip(a).map(|(w, x)| w * x).sum()
    }
}

impl Slope {
    pub fn new(sigma: Weight, theta: Weight) -> Result<Self> {
        if sigma.0.len() != theta.0.len() {
            return Err(Error::DimensionMismatch("sigma and theta lengths differ".into()));
        }
        if theta.0.iter().any(|&t| t <= 0) {
            return Err(Error::InvalidArgument("theta must be positive on every vertex".into()));
        }
        Ok(Slope { sigma, theta })
    }

    pub fn sigma(&self) -> &Weight {
        &self.sigma
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    pub fn num_vertices(&self) -> usize {
        self.sigma.0.len()
    }

    /// `sigma(a) / theta(a)`.
    pub fn value(&self, a: &DimVector) -> Result<SlopeValue> {
        if a.len() != self.num_vertices() {
            return Err(Error::DimensionMismatch("slope and vector lengths differ".into()));
        }
        if a.is_zero() {
            return Err(Error::InvalidArgument("slope of the zero vector is undefined".into()));
        }
        Ok(Ratio::new(self.sigma.apply(a), self.theta.apply(a)))
    }

    /// True iff no nonzero `g < a` has the same slope as `a`.
    pub fn coprime_to(&self, a: &DimVector) -> Result<bool> {
        let m = self.value(a)?;
        for g in a.sub_vectors() {
            if g.is_zero() || &g == a {
                continue;
            }
            if self.value(&g)? == m {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `sigma(a) / theta(a)` as an exact rational.
pub fn slope_value(mu: &Slope, a: &DimVector) -> Result<SlopeValue> {
    mu.value(a)
}

/// True iff `mu(g) != mu(a)` for every nonzero `g < a`.
pub fn coprime_check(mu: &Slope, a: &DimVector) -> Result<bool> {
    mu.coprime_to(a)
}
