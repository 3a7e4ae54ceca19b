use super::*;

fn dv(v: &[u32]) -> DimVector {
    DimVector(v.to_vec())
}

fn key(x: &[i64], y: &[i64]) -> Key {
    x.iter().chain(y).copied().collect()
}

#[test]
fn principal_frame_is_compatible() {
    for q in [Quiver::a_n(2), Quiver::a_n(3), Quiver::kronecker(2), Quiver::named("D5").unwrap()] {
        let f = PrincipalFrame::new(&q).unwrap();
        assert!(is_unitally_compatible(&f.b_extended(), &f.lambda()));
        let b = f.b_matrix();
        for i in 0..b.len() {
            for j in 0..b.len() {
                assert_eq!(b[i][j], -b[j][i]);
            }
        }
    }
    let mut bad = PrincipalFrame::new(&Quiver::a_n(2)).unwrap().lambda();
    bad[0][2] = 2;
    assert!(!is_unitally_compatible(&PrincipalFrame::new(&Quiver::a_n(2)).unwrap().b_extended(), &bad));
    assert!(PrincipalFrame::new(&Quiver::new(1, vec![(0, 0)]).unwrap()).is_err());
}

#[test]
fn a2_simple_and_projective() {
    let q = Quiver::a_n(2);
    let f = PrincipalFrame::new(&q).unwrap();
    let o = Oracle::new(&q, 2).unwrap();
    let s2 = o.simple(1);
    let x = cluster_variable(&f, s2.dim(), &grc_from_oracle(&s2).unwrap()).unwrap();
    assert_eq!(x.len(), 2);
    assert_eq!(f.g(&dv(&[0, 1])), vec![1, -1]);
    assert_eq!(f.phi(&dv(&[0, 1])), vec![1, 0]);
    assert!(x.series().coeff(&key(&[1, -1], &[0, 1])).is_one());
    assert!(x.series().coeff(&key(&[0, -1], &[0, 0])).is_one());

    let p1 = o.rep(&dv(&[1, 1]), vec![crate::oracle::Mat::identity(1)]).unwrap();
    let grc = grc_from_oracle(&p1).unwrap();
    assert!(grc[&dv(&[1, 0])].is_zero());
    let xp = cluster_variable(&f, p1.dim(), &grc).unwrap();
    assert_eq!(xp.len(), 3);
}

#[test]
fn zero_dimension_and_unit() {
    let q = Quiver::kronecker(2);
    let f = PrincipalFrame::new(&q).unwrap();
    let mut grc = GrCounts::new();
    grc.insert(dv(&[0, 0]), VPoly::one());
    let x0 = cluster_variable(&f, &dv(&[0, 0]), &grc).unwrap();
    assert_eq!(x0, ClusterElement::one(&f));
    let o = Oracle::new(&q, 3).unwrap();
    let s1 = o.simple(0);
    let x = cluster_variable(&f, s1.dim(), &grc_from_oracle(&s1).unwrap()).unwrap();
    assert_eq!(cluster_product(&x, &ClusterElement::one(&f)).unwrap(), x);
    assert!(matches!(cluster_variable(&f, s1.dim(), &GrCounts::new()), Err(Error::MissingEntry(_))));
}

#[test]
fn multiplication_on_a2_and_k2() {
    for (q, p) in [(Quiver::a_n(2), 2), (Quiver::a_n(2), 3), (Quiver::kronecker(2), 2)] {
        let f = PrincipalFrame::new(&q).unwrap();
        let o = Oracle::new(&q, p).unwrap();
        let (s1, s2) = (o.simple(0), o.simple(1));
        assert!(verify_cluster_multiplication(&f, &o, &s1, &s2).unwrap(), "{q:?} q={p}");
        assert!(verify_cluster_multiplication(&f, &o, &s2, &s1).unwrap(), "{q:?} q={p}");
    }
}

#[test]
fn grc_from_count_matches_oracle() {
    let q = Quiver::kronecker(2);
    let grc = grc_from_count(&q, &dv(&[1, 2]), &Weight(vec![2, -1])).unwrap();
    let o = Oracle::new(&q, 3).unwrap();
    // the preprojective of dimension (1,2): both arrows injective onto independent lines
    let m = o
        .rep(&dv(&[1, 2]), vec![crate::oracle::Mat::from_rows(2, 1, vec![1, 0]).unwrap(), crate::oracle::Mat::from_rows(2, 1, vec![0, 1]).unwrap()])
        .unwrap();
    for (c, poly) in &grc {
        let expected = gr_count(&m, c).unwrap();
        let val = QRat::from_vpoly(poly.clone()).eval_at(3).unwrap();
        assert_eq!(val, BigRational::from_integer(BigInt::from(expected)), "{c}");
    }
    assert!(grc_from_count(&q, &dv(&[2, 2]), &Weight(vec![1, -1])).is_err());
}

#[test]
fn classical_specialization_is_positive() {
    let q = Quiver::a_n(3);
    let f = PrincipalFrame::new(&q).unwrap();
    let grc = grc_from_count(&q, &dv(&[1, 1, 1]), &Weight(vec![3, -1, -2])).unwrap();
    let x = cluster_variable(&f, &dv(&[1, 1, 1]), &grc).unwrap();
    let c = x.classical().unwrap();
    assert!(!c.is_empty());
    assert!(c.values().all(|v| v.is_integer() && *v > BigRational::default()));
    assert!(x.to_string().contains("x_"));
}
