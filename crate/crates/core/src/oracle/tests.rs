use super::*;
use crate::quiver::Weight;

fn dv(v: &[u32]) -> DimVector {
    DimVector(v.to_vec())
}

fn slope(s: &[i64]) -> Slope {
    Slope::new(Weight(s.to_vec()), Weight(vec![1; s.len()])).unwrap()
}

fn scalar(x: u8) -> Mat {
    Mat::from_rows(1, 1, vec![x]).unwrap()
}

fn a2(p: u32) -> Oracle {
    Oracle::new(&Quiver::a_n(2), p).unwrap()
}

fn p1(o: &Oracle) -> FqRep {
    o.rep(&dv(&[1, 1]), vec![scalar(1)]).unwrap()
}

#[test]
fn enumeration_counts() {
    assert_eq!(Oracle::new(&Quiver::kronecker(2), 2).unwrap().enumerate_reps(&dv(&[1, 1])).unwrap().count(), 4);
    assert_eq!(Oracle::new(&Quiver::a_n(1), 2).unwrap().enumerate_reps(&dv(&[2])).unwrap().count(), 1);
    assert_eq!(a2(3).enumerate_reps(&dv(&[1, 1])).unwrap().count(), 3);
    let o = a2(2);
    let idx: Vec<u64> = o.enumerate_reps(&dv(&[2, 2])).unwrap().map(|r| r.point_index()).collect();
    assert_eq!(idx, (0..16).collect::<Vec<_>>());
}

#[test]
fn budget_is_enforced() {
    let o = Oracle::new(&Quiver::kronecker(3), 2).unwrap().with_budget(1000);
    match o.enumerate_reps(&dv(&[2, 2])) {
        Err(Error::Budget { required, budget }) => {
            assert_eq!(required, 1 << 12);
            assert_eq!(budget, 1000);
        }
        other => panic!("expected a budget error, got {:?}", other.map(|_| ())),
    };
}

#[test]
fn hom_and_ext_on_a2() {
    let o = a2(2);
    let (s1, s2) = (o.simple(0), o.simple(1));
    assert!(hom_space(&s1, &s2).unwrap().is_empty());
    assert_eq!(ext_space(&s1, &s2).unwrap().dim, 1);
    assert_eq!(ext_space(&s2, &s1).unwrap().dim, 0);
    let p = p1(&o);
    let end = hom_space(&p, &p).unwrap();
    assert_eq!(end.len(), 1);
    assert!(end[0].iter().all(|m| *m == Mat::identity(1)));
}

#[test]
fn euler_identity_on_all_pairs() {
    for (q, a, b) in [
        (Quiver::kronecker(2), dv(&[1, 1]), dv(&[1, 2])),
        (Quiver::a_n(3), dv(&[1, 1, 0]), dv(&[0, 1, 1])),
        (Quiver::new(1, vec![(0, 0)]).unwrap(), dv(&[2]), dv(&[1])),
    ] {
        let o = Oracle::new(&q, 2).unwrap();
        for m in o.enumerate_reps(&a).unwrap() {
            for n in o.enumerate_reps(&b).unwrap() {
                // both calls assert dim Hom - dim Ext = <a, b>
                let h = hom_space(&m, &n).unwrap().len() as i64;
                let e = ext_space(&m, &n).unwrap().dim as i64;
                assert_eq!(h - e, q.euler_additive(&a, &b).unwrap());
            }
        }
    }
}

#[test]
fn iso_classes_of_a2() {
    for p in [2, 3] {
        let o = a2(p);
        let classes = o.iso_classes(&dv(&[1, 1])).unwrap();
        assert_eq!(classes.len(), 2);
        let pc = classes.iter().find(|c| !c.representative.mats()[0].is_zero()).unwrap();
        assert_eq!(pc.aut_count, p as u128 - 1);
        assert_eq!(classes.iter().map(|c| c.orbit_size).sum::<u128>(), p as u128);
    }
}

#[test]
fn orbit_sizes_partition_points() {
    for (q, a, p) in [
        (Quiver::kronecker(2), dv(&[2, 2]), 2),
        (Quiver::kronecker(2), dv(&[1, 2]), 3),
        (Quiver::a_n(3), dv(&[1, 2, 1]), 2),
        (Quiver::a_n(1), dv(&[3]), 2),
    ] {
        let o = Oracle::new(&q, p).unwrap();
        let classes = o.iso_classes(&a).unwrap();
        assert_eq!(classes.iter().map(|c| c.orbit_size).sum::<u128>(), o.num_points(&a).unwrap());
        for c in &classes {
            assert_eq!(c.orbit_size * c.aut_count, o.gl_order(&a));
        }
        for i in 0..classes.len() {
            for j in 0..i {
                assert!(!o.is_isomorphic(&classes[i].representative, &classes[j].representative).unwrap());
            }
        }
    }
    // K_2 at (1,1) over F_2: zero and the three points of P^1.
    assert_eq!(Oracle::new(&Quiver::kronecker(2), 2).unwrap().iso_classes(&dv(&[1, 1])).unwrap().len(), 4);
}

#[test]
fn hall_numbers_on_a2() {
    let o = a2(2);
    let (s1, s2, p) = (o.simple(0), o.simple(1), p1(&o));
    assert_eq!(o.hall_number(&s1, &s2, &p).unwrap(), 1);
    assert_eq!(o.hall_number(&s2, &s1, &p).unwrap(), 0);
    let w = s1.direct_sum(&s2).unwrap();
    let f = o.hall_number(&s1, &s2, &w).unwrap();
    assert_eq!(f, 1);
    // Riedtmann: |Ext(U,V)_W| / |Hom(U,V)| * a_W / (a_U a_V)
    let dist = o.ext_middle_distribution(&s1, &s2).unwrap();
    let ext_w = dist.iter().find(|(m, _)| o.is_isomorphic(m, &w).unwrap()).unwrap().1;
    let hom = 2u128.pow(hom_space(&s1, &s2).unwrap().len() as u32);
    let (aw, au, av) = (o.aut_count(&w).unwrap(), o.aut_count(&s1).unwrap(), o.aut_count(&s2).unwrap());
    assert_eq!(ext_w * aw, f as u128 * hom * au * av);
    assert!(o.hall_number(&s1, &s1, &p).is_err());
}

#[test]
fn grassmannian_and_flag_counts() {
    let o = a2(2);
    let p = p1(&o);
    assert_eq!(gr_count(&p, &dv(&[0, 1])).unwrap(), 1);
    assert_eq!(gr_count(&p, &dv(&[1, 0])).unwrap(), 0);
    assert_eq!(gr_count(&p, &dv(&[0, 0])).unwrap(), 1);
    let k2 = Oracle::new(&Quiver::kronecker(2), 3).unwrap();
    let m = k2.rep(&dv(&[1, 1]), vec![scalar(1), scalar(2)]).unwrap();
    assert_eq!(gr_count(&m, &dv(&[0, 1])).unwrap(), 1);
    assert_eq!(gr_count(&m, &dv(&[1, 0])).unwrap(), 0);
    assert_eq!(flag_count(&p, &[dv(&[0, 1]), dv(&[1, 0])]).unwrap(), 1);
    assert_eq!(flag_count(&p, &[dv(&[1, 0]), dv(&[0, 1])]).unwrap(), 0);
    let a1 = Oracle::new(&Quiver::a_n(1), 2).unwrap();
    let z = a1.zero_rep(&dv(&[3]));
    // complete flags in F_2^3: (1 + 2)(1 + 2 + 4)
    assert_eq!(flag_count(&z, &[dv(&[1]), dv(&[1]), dv(&[1])]).unwrap(), 21);
    assert_eq!(gr_count(&z, &dv(&[1])).unwrap(), 7);
}

#[test]
fn restriction_and_quotient() {
    let o = Oracle::new(&Quiver::a_n(3), 3).unwrap();
    let m = o.rep(&dv(&[1, 1, 1]), vec![scalar(2), scalar(1)]).unwrap();
    let subs = subreps(&m, &dv(&[0, 1, 1])).unwrap();
    assert_eq!(subs.len(), 1);
    let r = restriction(&m, &subs[0]);
    let qt = quotient(&m, &subs[0]);
    assert_eq!(qt, o.simple(0));
    assert!(o.is_isomorphic(&r, &o.rep(&dv(&[0, 1, 1]), vec![Mat::zeros(1, 0), scalar(1)]).unwrap()).unwrap());
}

#[test]
fn semistability() {
    let o = a2(2);
    let sigma = Weight(vec![1, -1]);
    let p = p1(&o);
    let w = o.simple(0).direct_sum(&o.simple(1)).unwrap();
    assert!(is_semistable_king(&p, &sigma));
    assert!(!is_semistable_king(&w, &sigma));
    assert!(is_semistable(&p, &slope(&[1, -1])).unwrap());
    assert!(!is_semistable(&w, &slope(&[1, -1])).unwrap());
    let k2 = Oracle::new(&Quiver::kronecker(2), 2).unwrap();
    let m = k2.rep(&dv(&[1, 1]), vec![scalar(1), scalar(1)]).unwrap();
    assert!(is_stable(&m, &slope(&[1, -1])).unwrap());
    assert!(is_semistable_king(&m, &sigma));
}

#[test]
fn filtration_sums() {
    for p in [2u32, 3] {
        let o = a2(p);
        let s = o.simple(0);
        assert_eq!(filtration_alt_sum(&s, &Category::All).unwrap(), -1);
        let ss = s.direct_sum(&s).unwrap();
        assert_eq!(filtration_alt_sum(&ss, &Category::All).unwrap(), p as i128);
        assert_eq!(filtration_alt_sum(&p1(&o), &Category::All).unwrap(), 0);
        let mixed = s.direct_sum(&o.simple(1)).unwrap();
        assert_eq!(filtration_alt_sum(&mixed, &Category::All).unwrap(), 1);
        // P_1 is stable for sigma = (1,-1): a simple object of its subcategory
        let mu = slope(&[1, -1]);
        assert_eq!(filtration_alt_sum(&p1(&o), &Category::FixedSlope(mu.clone())).unwrap(), -1);
        let pp = p1(&o).direct_sum(&p1(&o)).unwrap();
        assert_eq!(filtration_alt_sum(&pp, &Category::FixedSlope(mu)).unwrap(), p as i128);
    }
}

#[test]
fn middle_term_distribution() {
    let o = a2(2);
    let (s1, s2) = (o.simple(0), o.simple(1));
    let dist = o.ext_middle_distribution(&s1, &s2).unwrap();
    assert_eq!(dist.len(), 2);
    assert_eq!(dist.iter().map(|d| d.1).sum::<u128>(), 2);
    assert!(dist.iter().all(|d| d.1 == 1));
    assert!(dist.iter().any(|(m, _)| o.is_isomorphic(m, &p1(&o)).unwrap()));
    let back = o.ext_middle_distribution(&s2, &s1).unwrap();
    assert_eq!(back.len(), 1);
    assert!(o.is_isomorphic(&back[0].0, &s1.direct_sum(&s2).unwrap()).unwrap());
    let k2 = Oracle::new(&Quiver::kronecker(2), 2).unwrap();
    let d = k2.ext_middle_distribution(&k2.simple(0), &k2.simple(1)).unwrap();
    assert_eq!(d.iter().map(|x| x.1).sum::<u128>(), 4);
    assert_eq!(d.len(), 4);
}

#[test]
fn a2_masses_match_counts() {
    let o = a2(3);
    let mu = slope(&[1, -1]);
    // only P_1 is semistable: 1 / (q - 1)
    assert_eq!(o.semistable_mass(&dv(&[1, 1]), &mu).unwrap(), BigRational::new(1.into(), 2.into()));
    assert_eq!(o.grassmannian_mass(&dv(&[1, 1]), &dv(&[0, 1]), &mu).unwrap(), BigRational::new(1.into(), 2.into()));
    assert_eq!(o.flag_mass(&[dv(&[1, 0]), dv(&[0, 1])], &mu).unwrap(), BigRational::from_integer(0.into()));
}
