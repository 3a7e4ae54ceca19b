use hallcount::oracle::{ext_space, hom_space, FqRep, Oracle};
use hallcount::quiver::{dynkin_indecomposables, dynkin_quiver, DynkinType, Quiver};

fn brick(o: &Oracle, a: &hallcount::quiver::DimVector) -> FqRep {
    let mut found: Vec<FqRep> = Vec::new();
    for c in o.iso_classes(a).unwrap() {
        if hom_space(&c.representative, &c.representative).unwrap().len() == 1 {
            found.push(c.representative);
        }
    }
    assert_eq!(found.len(), 1, "{a}");
    found.pop().unwrap()
}

#[test]
fn indecomposables_are_hom_ordered() {
    let quivers = [
        Quiver::a_n(3),
        Quiver::new(3, vec![(1, 0), (1, 2)]).unwrap(),
        Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap(),
        dynkin_quiver(DynkinType::D, 4).unwrap(),
    ];
    for q in quivers {
        let o = Oracle::new(&q, 2).unwrap();
        let roots = dynkin_indecomposables(&q).unwrap();
        let mods: Vec<FqRep> = roots.iter().map(|a| brick(&o, a)).collect();
        // the generic representation of a real root is the indecomposable
        for (a, m) in roots.iter().zip(&mods) {
            let classes = o.iso_classes(a).unwrap();
            let largest = classes.iter().max_by_key(|c| c.orbit_size).unwrap();
            assert!(o.is_isomorphic(&largest.representative, m).unwrap(), "{a}");
            assert!(ext_space(m, m).unwrap().dim == 0);
        }
        for i in 0..mods.len() {
            for j in 0..mods.len() {
                if i > j {
                    assert!(hom_space(&mods[i], &mods[j]).unwrap().is_empty(), "Hom({}, {})", roots[i], roots[j]);
                } else {
                    assert_eq!(ext_space(&mods[i], &mods[j]).unwrap().dim, 0, "Ext({}, {})", roots[i], roots[j]);
                }
            }
        }
    }
}
