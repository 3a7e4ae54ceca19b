use num_bigint::BigInt;
use num_rational::BigRational;

use hallcount::count::{flag_moduli_count, grassmannian_moduli_count, moduli_count};
use hallcount::exactq::QRat;
use hallcount::oracle::{flag_count, hom_space, FqRep, Oracle};
use hallcount::quiver::{DimVector, Quiver, Slope, Weight};
use hallcount::series::{compositions, GradedSeries, TwistRule};

fn dv(v: &[u32]) -> DimVector {
    DimVector(v.to_vec())
}

fn slope(s: &[i64]) -> Slope {
    Slope::new(Weight(s.to_vec()), Weight(vec![1; s.len()])).unwrap()
}

#[test]
fn moduli_and_grassmannians_match_enumeration() {
    for p in [2u32, 3] {
        for (q, a) in [(Quiver::kronecker(2), dv(&[1, 1])), (Quiver::kronecker(2), dv(&[1, 2])), (Quiver::a_n(2), dv(&[2, 1]))] {
            let mu = slope(&[1, -1]);
            let o = Oracle::new(&q, p).unwrap();
            let r = moduli_count(&q, &a, &mu).unwrap();
            assert_eq!(r.raw.eval_at(p as u64).unwrap(), o.semistable_mass(&a, &mu).unwrap(), "{q:?} {a} q={p}");
            for c in a.sub_vectors() {
                let g = grassmannian_moduli_count(&q, &a, &c, &mu).unwrap();
                assert_eq!(g.raw.eval_at(p as u64).unwrap(), o.grassmannian_mass(&a, &c, &mu).unwrap(), "{a} {c} q={p}");
            }
        }
    }
}

#[test]
fn three_step_flags_match_enumeration() {
    let q = Quiver::kronecker(2);
    let mu = slope(&[1, -1]);
    let o = Oracle::new(&q, 2).unwrap();
    for parts in compositions(&dv(&[1, 2]), 3) {
        let r = flag_moduli_count(&q, &parts, &mu).unwrap();
        assert_eq!(r.raw.eval_at(2).unwrap(), o.flag_mass(&parts, &mu).unwrap(), "{parts:?}");
    }
}

/// `(1 / a_M) sum |Fl(M)| x^key` with keys listing parts top quotient first.
fn integral(o: &Oracle, m: &FqRep, t: usize, trunc: i64) -> GradedSeries {
    let rule = TwistRule::flag(o.quiver(), t);
    let a_m = BigRational::from_integer(BigInt::from(o.aut_count(m).unwrap()));
    let mut s = GradedSeries::zero(rule, trunc);
    for slots in compositions(m.dim(), t) {
        let bottom_first: Vec<DimVector> = slots.iter().rev().cloned().collect();
        let n = flag_count(m, &bottom_first).unwrap();
        if n > 0 {
            let key = slots.iter().flat_map(|d| d.0.iter().map(|&x| x as i64)).collect();
            s.add_term(key, QRat::from_rational(&(BigRational::from_integer(n.into()) / &a_m))).unwrap();
        }
    }
    s
}

fn eval(s: &GradedSeries, p: u64) -> Vec<(Vec<i64>, BigRational)> {
    s.terms().map(|(k, c)| (k.clone(), c.eval_at(p).unwrap())).collect()
}

/// The flag-counting map is multiplicative on `[U][V] = sum_W F^W_UV [W]`, where
/// by Riedtmann `F^W_UV / a_W = |Ext(U,V)_W| / (|Hom(U,V)| a_U a_V)`.
#[test]
fn flag_character_is_multiplicative() {
    for (quiver, p, dims) in [
        (Quiver::a_n(2), 2u32, vec![dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1])]),
        (Quiver::kronecker(2), 2, vec![dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1])]),
        (Quiver::a_n(2), 3, vec![dv(&[1, 0]), dv(&[0, 1])]),
    ] {
        let o = Oracle::new(&quiver, p).unwrap();
        let reps: Vec<FqRep> =
            dims.iter().flat_map(|d| o.iso_classes(d).unwrap().into_iter().map(|c| c.representative)).collect();
        for t in 1..=3usize {
            for u in &reps {
                for v in &reps {
                    let trunc = (u.dim().total() + v.dim().total()) as i64;
                    let lhs = integral(&o, u, t, trunc).mul(&integral(&o, v, t, trunc)).unwrap();
                    let hom = BigInt::from(p).pow(hom_space(u, v).unwrap().len() as u32);
                    let denom = hom * BigInt::from(o.aut_count(u).unwrap()) * BigInt::from(o.aut_count(v).unwrap());
                    let mut rhs = GradedSeries::zero(TwistRule::flag(&quiver, t), trunc);
                    for (w, k) in o.ext_middle_distribution(u, v).unwrap() {
                        let a_w = BigInt::from(o.aut_count(&w).unwrap());
                        let c = BigRational::new(BigInt::from(k) * a_w, denom.clone());
                        rhs = rhs.add(&integral(&o, &w, t, trunc).scale(&QRat::from_rational(&c))).unwrap();
                    }
                    assert_eq!(eval(&lhs, p as u64), eval(&rhs, p as u64), "t = {t}, U = {u:?}, V = {v:?}");
                }
            }
        }
    }
}

#[test]
fn check_suite_passes_on_small_quivers() {
    use hallcount::oracle::checks::run_suite;
    let cases = [(Quiver::a_n(2), vec![1, -1]), (Quiver::kronecker(2), vec![1, -1]), (Quiver::a_n(2), vec![0, 0])];
    for (q, sigma) in cases {
        let mu = Slope::new(Weight(sigma), Weight(vec![1, 1])).unwrap();
        let o = Oracle::new(&q, 2).unwrap();
        for c in run_suite(&o, &mu, 3).unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
