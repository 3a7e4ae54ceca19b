//! Comparisons between the counting engine and brute-force enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::count::{flag_moduli_count, grassmannian_moduli_count, moduli_count};
use crate::error::Result;
use crate::quiver::{DimVector, Slope};
use crate::series::{compositions, vectors_up_to};

use super::{ext_space, filtration_alt_sum, gr_count, hom_space, is_stable, Category, FqRep, Oracle};

/// One named comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn q_pow(p: u32, e: i64) -> BigRational {
    let b = int(p);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, (-e) as usize).recip()
    }
}

/// `sum_{M ss} 1/a_M = r^ss_a(p)`.
pub fn check_moduli(o: &Oracle, a: &DimVector, mu: &Slope) -> Result<Check> {
    let p = o.field().p() as u64;
    let formula = moduli_count(o.quiver(), a, mu)?.raw.eval_at(p)?;
    let brute = o.semistable_mass(a, mu)?;
    Ok(Check::new(format!("moduli {a} q={p}"), formula == brute, format!("formula {formula}, enumeration {brute}")))
}

/// `sum_{M ss} |Gr_c(M)|/a_M = r^ss_{a-c,c}(p)` for every `c <= a`.
pub fn check_grassmannians(o: &Oracle, a: &DimVector, mu: &Slope) -> Result<Check> {
    let p = o.field().p() as u64;
    for c in a.sub_vectors() {
        let formula = grassmannian_moduli_count(o.quiver(), a, &c, mu)?.raw.eval_at(p)?;
        let brute = o.grassmannian_mass(a, &c, mu)?;
        if formula != brute {
            return Ok(Check::new(format!("grassmannians {a} q={p}"), false, format!("gamma {c}: formula {formula}, enumeration {brute}")));
        }
    }
    Ok(Check::new(format!("grassmannians {a} q={p}"), true, ""))
}

/// The `t`-step flag version over all compositions of `a`.
pub fn check_flags(o: &Oracle, a: &DimVector, mu: &Slope, t: usize) -> Result<Check> {
    let p = o.field().p() as u64;
    let name = format!("{t}-step flags {a} q={p}");
    for parts in compositions(a, t) {
        let formula = flag_moduli_count(o.quiver(), &parts, mu)?.raw.eval_at(p)?;
        let brute = o.flag_mass(&parts, mu)?;
        if formula != brute {
            return Ok(Check::new(name, false, format!("parts {parts:?}: formula {formula}, enumeration {brute}")));
        }
    }
    Ok(Check::new(name, true, ""))
}

/// Riedtmann: `F^W_UV |Hom(U,V)| a_U a_V = |Ext(U,V)_W| a_W` for every middle term `W`.
pub fn check_riedtmann(o: &Oracle, u: &FqRep, v: &FqRep) -> Result<bool> {
    let p = o.field().p() as u128;
    let hom = p.pow(hom_space(u, v)?.len() as u32);
    let (au, av) = (o.aut_count(u)?, o.aut_count(v)?);
    for (w, ext_w) in o.ext_middle_distribution(u, v)? {
        let f = o.hall_number(u, v, &w)? as u128;
        if f * hom * au * av != ext_w * o.aut_count(&w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every `c`: `sum <c1, b2> |Gr_c1(U)| |Gr_c2(V)| = sum_W |Ext_W| / |Ext| |Gr_c(W)|`.
pub fn check_green(o: &Oracle, u: &FqRep, v: &FqRep) -> Result<bool> {
    let p = o.field().p();
    let q = o.quiver();
    let total = u.dim().add(v.dim());
    let ext = int(BigInt::from(p).pow(ext_space(u, v)?.dim as u32));
    let dist = o.ext_middle_distribution(u, v)?;
    for c in total.sub_vectors() {
        let mut lhs = BigRational::zero();
        for c1 in u.dim().meet(&c).sub_vectors() {
            let Some(c2) = c.checked_sub(&c1) else { continue };
            if !c2.le(v.dim()) {
                continue;
            }
            let b2 = v.dim().checked_sub(&c2).unwrap();
            let g = gr_count(u, &c1)? * gr_count(v, &c2)?;
            lhs += q_pow(p, q.euler_additive(&c1, &b2)?) * int(g);
        }
        let mut rhs = BigRational::zero();
        for (w, k) in &dist {
            rhs += int(*k) * int(gr_count(w, &c)?) / &ext;
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Representatives of every isomorphism class of total dimension in `1..=max`.
pub fn classes_up_to(o: &Oracle, max: u32) -> Result<Vec<FqRep>> {
    let mut out = Vec::new();
    for a in vectors_up_to(o.quiver().num_vertices(), max) {
        if !a.is_zero() {
            out.extend(o.iso_classes(&a)?.into_iter().map(|c| c.representative));
        }
    }
    Ok(out)
}

/// `([U][V])[Z] = [U]([V][Z])` coefficientwise on iso classes of the total dimension.
pub fn check_associativity(o: &Oracle, u: &FqRep, v: &FqRep, z: &FqRep) -> Result<bool> {
    let uv = u.dim().add(v.dim());
    let vz = v.dim().add(z.dim());
    let total = uv.add(z.dim());
    let xs = o.iso_classes(&uv)?;
    let ys = o.iso_classes(&vz)?;
    for w in o.iso_classes(&total)? {
        let w = &w.representative;
        let mut left = 0u64;
        for x in &xs {
            let f = o.hall_number(u, v, &x.representative)?;
            if f > 0 {
                left += f * o.hall_number(&x.representative, z, w)?;
            }
        }
        let mut right = 0u64;
        for y in &ys {
            let f = o.hall_number(v, z, &y.representative)?;
            if f > 0 {
                right += f * o.hall_number(u, &y.representative, w)?;
            }
        }
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed form for the full category of an acyclic quiver: semisimple means every
/// arrow acts by zero, and then `F = prod_v (-1)^(m_v) q^(m_v (m_v - 1) / 2)`.
pub fn check_filtration_all(o: &Oracle, m: &FqRep) -> Result<bool> {
    let p = o.field().p() as i128;
    let expect = if m.mats().iter().all(|x| x.is_zero()) {
        m.dim().0.iter().fold(1i128, |acc, &k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            acc * sign * p.pow(k * k.saturating_sub(1) / 2)
        })
    } else {
        0
    };
    Ok(filtration_alt_sum(m, &Category::All)? == expect)
}

/// In the semistable subcategory of each slope: polystable objects
/// `W = sum S^(m_S)` give `prod (-1)^(m_S) q_S^(m_S (m_S - 1) / 2)` with `q_S = |End S|`,
/// all other semistable objects give zero.
pub fn check_filtration_fixed_slope(o: &Oracle, mu: &Slope, max: u32) -> Result<Vec<Check>> {
    let p = o.field().p() as i128;
    let mut semistable: Vec<FqRep> = Vec::new();
    let mut stable: Vec<(FqRep, i128)> = Vec::new();
    for m in classes_up_to(o, max)? {
        if super::is_semistable(&m, mu)? {
            if is_stable(&m, mu)? {
                let qs = p.pow(hom_space(&m, &m)?.len() as u32);
                stable.push((m.clone(), qs));
            }
            semistable.push(m);
        }
    }
    // every polystable of total dimension <= max, with its closed-form value
    let mut poly: Vec<(FqRep, i128)> = Vec::new();
    let mut frontier: Vec<(FqRep, usize, i128)> = Vec::new();
    for (i, (s, qs)) in stable.iter().enumerate() {
        for k in 1..=max / s.dim().total() {
            let mut w = s.clone();
            for _ in 1..k {
                w = w.direct_sum(s)?;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            frontier.push((w, i, sign * qs.pow(k * (k - 1) / 2)));
        }
    }
    while let Some((w, last, val)) = frontier.pop() {
        poly.push((w.clone(), val));
        for (j, (s, qs)) in stable.iter().enumerate().skip(last + 1) {
            if mu.value(s.dim())? != mu.value(w.dim())? {
                continue;
            }
            let mut x = w.clone();
            for k in 1..=max {
                x = x.direct_sum(s)?;
                if x.dim().total() > max {
                    break;
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                frontier.push((x.clone(), j, val * sign * qs.pow(k * (k - 1) / 2)));
            }
        }
    }
    let mut out = Vec::new();
    for m in &semistable {
        let cat = Category::FixedSlope(mu.clone());
        let got = filtration_alt_sum(m, &cat)?;
        let mut expect = 0;
        for (w, val) in &poly {
            if o.is_isomorphic(w, m)? {
                expect = *val;
                break;
            }
        }
        out.push(Check::new(format!("fixed-slope filtration {:?}", m.mats()), got == expect, format!("got {got}, expected {expect}")));
    }
    Ok(out)
}

/// Every check at one field for dimension vectors of total at most `max_dim`.
pub fn run_suite(o: &Oracle, mu: &Slope, max_dim: u32) -> Result<Vec<Check>> {
    let p = o.field().p();
    let n = o.quiver().num_vertices();
    let mut out = Vec::new();
    for a in vectors_up_to(n, max_dim) {
        if a.is_zero() {
            continue;
        }
        out.push(check_moduli(o, &a, mu)?);
        out.push(check_grassmannians(o, &a, mu)?);
        if a.total() <= 3 {
            out.push(check_flags(o, &a, mu, 3)?);
        }
    }
    let small = classes_up_to(o, max_dim.min(3))?;
    let (mut ried, mut green, mut pairs) = (true, true, 0);
    for u in &small {
        for v in &small {
            if u.dim().total() + v.dim().total() <= max_dim.min(3) {
                pairs += 1;
                ried &= check_riedtmann(o, u, v)?;
                green &= check_green(o, u, v)?;
            }
        }
    }
    out.push(Check::new(format!("riedtmann q={p}"), ried, format!("{pairs} pairs")));
    out.push(Check::new(format!("green identity q={p}"), green, format!("{pairs} pairs")));
    let mut assoc = true;
    let mut triples = 0;
    for u in &small {
        for v in &small {
            for z in &small {
                if u.dim().total() + v.dim().total() + z.dim().total() <= max_dim.min(3) {
                    triples += 1;
                    assoc &= check_associativity(o, u, v, z)?;
                }
            }
        }
    }
    out.push(Check::new(format!("associativity q={p}"), assoc, format!("{triples} triples")));
    if o.quiver().is_acyclic() {
        let mut filt = true;
        for m in &small {
            filt &= check_filtration_all(o, m)?;
        }
        out.push(Check::new(format!("filtration sums q={p}"), filt, format!("{} classes", small.len())));
    }
    let fixed = check_filtration_fixed_slope(o, mu, max_dim.min(3))?;
    let bad: Vec<&Check> = fixed.iter().filter(|c| !c.passed).collect();
    out.push(Check::new(
        format!("fixed-slope filtration sums q={p}"),
        bad.is_empty(),
        bad.first().map(|c| c.detail.clone()).unwrap_or_else(|| format!("{} classes", fixed.len())),
    ));
    Ok(out)
}
