use std::sync::Arc;

use softplane::algebra::{FieldAutomorphism, FiniteField, SemifieldTable};
use softplane::constructions::{
    decorated_subgroup_search, extend_by_automorphism, heisenberg, ActionConvention, Heisenberg,
    Likeable,
};
use softplane::group::{center, center_and_series, commutator_subgroup};
use softplane::plane::{
    build_desarguesian, build_plane, coordinatize_ptr, default_quadrilateral, planes_isomorphic,
    PtrClass, DEFAULT_NODE_BUDGET,
};

fn field(q: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::of_order(q).unwrap())
}

#[test]
fn heisenberg_over_gf2_gives_fano() {
    let t = heisenberg(field(2)).unwrap();
    assert_eq!((t.n(), t.k(), t.group().order()), (2, 1, 8));
    let sp = build_plane(&t).unwrap();
    let fano = build_desarguesian(2).unwrap();
    assert!(planes_isomorphic(sp.plane(), &fano, false, DEFAULT_NODE_BUDGET)
        .unwrap()
        .is_some());
}

#[test]
fn heisenberg_planes_match_desarguesian_up_to_five() {
    for q in [3, 4, 5] {
        let t = heisenberg(field(q)).unwrap();
        let sp = build_plane(&t).unwrap();
        let pg = build_desarguesian(q).unwrap();
        let iso = planes_isomorphic(sp.plane(), &pg, true, DEFAULT_NODE_BUDGET).unwrap();
        assert!(iso.is_some(), "q = {q}");
    }
}

#[test]
fn heisenberg_gf9_coordinatizes_as_field() {
    let t = heisenberg(field(9)).unwrap();
    assert_eq!(t.group().order(), 729);
    let sp = build_plane(&t).unwrap();
    let quad = default_quadrilateral(sp.plane()).unwrap();
    assert_eq!(coordinatize_ptr(sp.plane(), quad).unwrap().class(), PtrClass::Field);
}

#[test]
fn heisenberg_field_center_is_derived_is_m() {
    for q in [2, 3, 4] {
        let t = heisenberg(field(q)).unwrap();
        let g = t.group();
        let z = center(g);
        let d = commutator_subgroup(&g.whole(), &g.whole()).unwrap();
        assert_eq!(&z, t.m());
        assert_eq!(&d, t.m());
    }
}

fn semifield16() -> SemifieldTable {
    let text = include_str!("../fixtures/semifield16.sf");
    softplane::io::parse_semifield(text).unwrap()
}

#[test]
fn heisenberg_over_proper_semifield() {
    let sf = semifield16();
    assert!(sf.is_proper());
    let h = Heisenberg::new(Arc::new(sf)).unwrap();
    let t = h.triple();
    assert_eq!(t.n(), 16);
    assert_eq!(&center(t.group()), t.m());
    assert!(t.am().is_normal() && t.bm().is_normal());
    let sp = build_plane(t).unwrap();
    let quad = default_quadrilateral(sp.plane()).unwrap();
    assert_eq!(coordinatize_ptr(sp.plane(), quad).unwrap().class(), PtrClass::Semifield);
}

#[test]
fn likeable_q5() {
    let l = Likeable::new(5, None).unwrap();
    let t = l.triple();
    assert_eq!((t.n(), t.k(), t.group().order()), (25, 1, 15625));
    assert!(t.a().is_elementary_abelian());
    let series = center_and_series(t.group()).unwrap();
    assert_eq!(series.center.order(), 5);
    assert!(matches!(series.nilpotency_class, Some(4) | Some(5)));
    let g = t.group();
    let d = commutator_subgroup(&g.whole(), &g.whole()).unwrap();
    assert_eq!(d.order(), 125);
    // G' = (0, F, F, F)
    assert!(d.elements().all(|x| {
        let (tt, u, v) = l.coordinates(x);
        tt == 0 && u == 0 && v[0] == 0
    }));
    assert!(t.bm().is_elementary_abelian() && t.bm().is_normal());
    assert_eq!(t.bm().order(), 625);
}

#[test]
fn likeable_wrong_convention_fails_certification() {
    let err = Likeable::with_convention(5, None, ActionConvention::AddCommutator).unwrap_err();
    assert!(err.to_string().contains("not closed"), "{err}");
}

#[test]
fn likeable_rejects_bad_q() {
    assert!(Likeable::new(7, None).is_err());
    assert!(Likeable::new(4, None).is_err());
}

#[test]
fn decorate_gf4_and_gf8() {
    for (q, k, order) in [(4u32, 2usize, 128usize), (8, 3, 1536)] {
        let f = FiniteField::of_order(q).unwrap();
        let h = Heisenberg::new(Arc::new(f.clone())).unwrap();
        let d = extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1)).unwrap();
        let t = d.triple();
        assert_eq!((t.n(), t.k(), t.group().order()), (q as usize, k, order));
        assert!(!t.m().is_normal());
        assert!(!t.bm().is_normal());
        let sp = build_plane(t).unwrap();
        let act = sp.right_action().unwrap();
        assert_eq!(act.flag_orbit(), (q as usize).pow(3));
    }
}

#[test]
fn gf8_decoration_is_solvable_not_nilpotent() {
    let f = FiniteField::of_order(8).unwrap();
    let h = Heisenberg::new(Arc::new(f.clone())).unwrap();
    let d = extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1)).unwrap();
    let s = center_and_series(d.group()).unwrap();
    assert!(s.solvable);
    assert_eq!(s.nilpotency_class, None);
}

#[test]
fn gf2_has_no_decoration() {
    let f = FiniteField::of_order(2).unwrap();
    let h = Heisenberg::new(Arc::new(f.clone())).unwrap();
    assert!(extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1)).is_err());
}

#[test]
fn gf4_decorated_search_finds_twisted_subgroup() {
    let f = FiniteField::of_order(4).unwrap();
    let h = Heisenberg::new(Arc::new(f.clone())).unwrap();
    let d = extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1)).unwrap();
    let cands = decorated_subgroup_search(&d).unwrap();
    let base = d.base_subgroup().unwrap();
    // the base group is among the soft hits with everything normal
    let b = cands.iter().find(|c| c.subgroup == base).unwrap();
    let hit = b.soft.as_ref().unwrap();
    assert!(hit.m_normal && hit.am_normal && hit.bm_normal);
    // some index-2 subgroup is rejected
    assert!(cands.iter().any(|c| c.soft.is_none() && c.flag_orbit != 64));
    let twisted = cands.iter().filter_map(|c| c.soft.as_ref()).find(|h| {
        h.m_normal && !h.am_normal && !h.bm_normal && h.center_order < 4 && !h.contains_translations
    });
    assert!(twisted.is_some());
}
