use std::collections::BTreeSet;
use std::sync::Arc;

use softplane::algebra::{FieldAutomorphism, FiniteField};
use softplane::constructions::{extend_by_automorphism, heisenberg, Heisenberg};
use softplane::converse::{
    extract_soft_triple, opposite_flag_census, order_feasibility, search_soft_triples,
    sylow_reduction, SearchOptions, SOFT_PARITY, TWO_SQUARES,
};
use softplane::group::{catalog, Elem, Group, Subgroup};
use softplane::plane::{
    build_desarguesian, build_plane, coordinatize_ptr, default_quadrilateral, linear_collineation,
    CollineationGroup, PtrClass,
};
use softplane::soft::check_conditions;

fn field(q: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::of_order(q).unwrap())
}

#[test]
fn fano_round_trip() {
    let t = heisenberg(field(2)).unwrap();
    let sp = build_plane(&t).unwrap();
    let h = sp.right_action().unwrap().collineation_group().unwrap();
    let r = extract_soft_triple(sp.plane(), &h).unwrap();
    assert_eq!((r.triple.a().order(), r.triple.b().order(), r.triple.m().order()), (2, 2, 2));
    assert!(r.isomorphism.verify(sp.plane(), r.rebuilt.plane()));
    assert_eq!(r.fixed_flag, (0, 0));
    assert_eq!((r.ideal_point, r.ideal_line), (sp.ideal_point(), sp.ideal_line()));
}

#[test]
fn full_fano_group_has_no_soft_orbit() {
    let plane = build_desarguesian(2).unwrap();
    // transvections generate SL(3,2) = PGL(3,2)
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = [1, 0, 0, 0, 1, 0, 0, 0, 1];
                m[3 * i + j] = 1;
                gens.push(linear_collineation(2, &m).unwrap());
            }
        }
    }
    let h = CollineationGroup::generate(Arc::new(plane.clone()), gens).unwrap();
    assert_eq!(h.order(), 168);
    let err = extract_soft_triple(&plane, &h).unwrap_err();
    assert!(err.to_string().contains("no flag orbit of size n^3"), "{err}");
}

#[test]
fn census_of_heisenberg_gf3() {
    let t = heisenberg(field(3)).unwrap();
    let sp = build_plane(&t).unwrap();
    let h = sp.right_action().unwrap().collineation_group().unwrap();
    assert_eq!(opposite_flag_census(sp.plane(), &h, (0, 0)).unwrap(), vec![27]);
    let trivial = CollineationGroup::generate(sp.plane().clone(), vec![]).unwrap();
    assert_eq!(opposite_flag_census(sp.plane(), &trivial, (0, 0)).unwrap(), vec![1; 27]);
}

#[test]
fn census_rejects_non_fixed_flag() {
    let t = heisenberg(field(2)).unwrap();
    let sp = build_plane(&t).unwrap();
    let h = sp.right_action().unwrap().collineation_group().unwrap();
    let l = sp.base_line();
    let p = sp.plane().points_on(l)[0] as usize;
    assert!(opposite_flag_census(sp.plane(), &h, (p, l)).is_err());
}

#[test]
fn sylow_reduction_of_decorated_gf8() {
    let f = field(8);
    let h = Heisenberg::new(f.clone()).unwrap();
    let d = extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1)).unwrap();
    let t = d.triple();
    assert_eq!((t.n(), t.k(), t.group().order()), (8, 3, 1536));
    let r = sylow_reduction(t, 2).unwrap();
    assert_eq!((r.triple.n(), r.triple.k(), r.triple.group().order()), (8, 1, 512));
    let plane = r.rebuilt.plane();
    let ptr = coordinatize_ptr(plane, default_quadrilateral(plane).unwrap()).unwrap();
    assert_eq!(ptr.class(), PtrClass::Field);
    assert!(sylow_reduction(t, 3).is_err());
}

#[test]
fn sylow_reduction_of_p_group_keeps_order() {
    let t = heisenberg(field(3)).unwrap();
    let r = sylow_reduction(&t, 3).unwrap();
    assert_eq!(r.triple.group().order(), 27);
}

#[test]
fn feasibility_verdicts() {
    for n in [6, 10, 14] {
        let f = order_feasibility(n).unwrap();
        assert!(!f.feasible());
        assert!(f.rejections().any(|v| v.filter == SOFT_PARITY), "{f}");
    }
    for n in [21, 33] {
        let f = order_feasibility(n).unwrap();
        let rej: Vec<_> = f.rejections().map(|v| v.filter).collect();
        assert_eq!(rej, vec![TWO_SQUARES], "{f}");
    }
    for n in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        assert!(order_feasibility(n).unwrap().feasible(), "n = {n}");
    }
}

// Independent oracle: subgroups of a given order as closures of element
// pairs, every (A, B, M) triple checked directly against the conditions.
fn brute_force(g: &Group, n: usize, k: usize) -> BTreeSet<(Vec<Elem>, Vec<Elem>)> {
    let mut subs = BTreeSet::new();
    for x in g.elements() {
        for y in g.elements() {
            let h = Subgroup::generated(g, &[x, y]).unwrap();
            if h.order() == n * k {
                subs.insert(h.to_vec());
            }
        }
    }
    let subs: Vec<Subgroup> = subs
        .into_iter()
        .map(|v| Subgroup::from_elements(g, v).unwrap())
        .collect();
    let mut out = BTreeSet::new();
    for a in &subs {
        for b in &subs {
            let soft = subs
                .iter()
                .any(|m| check_conditions(g, a, b, m).unwrap().passed());
            if soft {
                let canon = g
                    .elements()
                    .map(|x| {
                        let c = |h: &Subgroup| {
                            let mut v: Vec<Elem> = h.elements().map(|e| g.conj(e, x)).collect();
                            v.sort_unstable();
                            v
                        };
                        (c(a), c(b))
                    })
                    .min()
                    .unwrap();
                out.insert(canon);
            }
        }
    }
    out
}

#[test]
fn order_8_search_matches_brute_force() {
    for g in catalog::groups_of_order_8() {
        let report = search_soft_triples(&g, &SearchOptions::default()).unwrap();
        let found: BTreeSet<_> = report.triples.keys().cloned().collect();
        assert_eq!(found, brute_force(&g, 2, 1), "{}", g.label());
        assert_eq!(!found.is_empty(), g.label().contains("D8"), "{}", g.label());
    }
}

#[test]
fn order_27_pruning_is_sound() {
    let groups = vec![
        heisenberg(field(3)).unwrap().group().clone(),
        catalog::abelian(&[3, 3, 3]).unwrap(),
        catalog::abelian(&[9, 3]).unwrap(),
    ];
    for g in groups {
        let pruned = search_soft_triples(&g, &SearchOptions::default()).unwrap();
        let full = search_soft_triples(
            &g,
            &SearchOptions {
                prune: false,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        let a: BTreeSet<_> = pruned.triples.keys().cloned().collect();
        let b: BTreeSet<_> = full.triples.keys().cloned().collect();
        assert_eq!(a, b);
        assert_eq!(a, brute_force(&g, 3, 1));
    }
}

#[test]
fn search_refuses_large_groups() {
    let g = catalog::cyclic(2048).unwrap();
    let err = search_soft_triples(&g, &SearchOptions::default()).unwrap_err();
    assert!(err.is_budget());
}
