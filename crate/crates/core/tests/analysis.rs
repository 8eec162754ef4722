use std::sync::Arc;

use softplane::algebra::{FieldAutomorphism, FiniteField};
use softplane::analysis::{
    classify, full_axial_elations, ideal_checks, proposition_battery, ElationCensus, Perspectivity,
};
use softplane::constructions::{extend_by_automorphism, heisenberg, Heisenberg, Likeable};
use softplane::io::parse_semifield;
use softplane::plane::build_plane;
use softplane::SoftTriple;

fn field(q: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::of_order(q).unwrap())
}

fn semifield16() -> SoftTriple {
    let sf = parse_semifield(include_str!("../fixtures/semifield16.sf")).unwrap();
    heisenberg(Arc::new(sf)).unwrap()
}

fn decorated(q: u32) -> SoftTriple {
    let f = field(q);
    let h = Heisenberg::new(f.clone()).unwrap();
    let alpha = FieldAutomorphism::frobenius(&f, 1);
    extend_by_automorphism(&h, &alpha).unwrap().triple().clone()
}

fn fixtures() -> Vec<(&'static str, SoftTriple)> {
    vec![
        ("GF(2)", heisenberg(field(2)).unwrap()),
        ("GF(3)", heisenberg(field(3)).unwrap()),
        ("GF(4)", heisenberg(field(4)).unwrap()),
        ("GF(5)", heisenberg(field(5)).unwrap()),
        ("semifield 16", semifield16()),
        ("GF(4) decorated", decorated(4)),
        ("GF(8) decorated", decorated(8)),
    ]
}

#[test]
fn battery_finds_no_contradiction_on_fixtures() {
    for (name, t) in fixtures() {
        let sp = build_plane(&t).unwrap();
        let r = proposition_battery(&sp).unwrap();
        assert!(r.contradictions().is_empty(), "{name}:\n{r}");
    }
}

#[test]
fn ideal_checks_pass_on_fixtures() {
    for (name, t) in fixtures() {
        let sp = build_plane(&t).unwrap();
        for c in ideal_checks(&sp).unwrap() {
            assert!(c.passed, "{name}: {c}");
        }
    }
}

#[test]
fn order_two_vacuity() {
    let r4 = proposition_battery(&build_plane(&heisenberg(field(4)).unwrap()).unwrap()).unwrap();
    let o = r4.get("n = 2 mod 4 forces n = 2").unwrap();
    assert!(!o.hypothesis);
    assert_eq!(o.conclusion, None);
    let r2 = proposition_battery(&build_plane(&heisenberg(field(2)).unwrap()).unwrap()).unwrap();
    assert_eq!(r2.get("n = 2 mod 4 forces n = 2").unwrap().conclusion, Some(true));
}

#[test]
fn heisenberg_has_normal_m_consequences() {
    for q in [2, 3, 4, 5] {
        let r = proposition_battery(&build_plane(&heisenberg(field(q)).unwrap()).unwrap()).unwrap();
        let o = r.get("consequences of M normal").unwrap();
        assert_eq!(o.conclusion, Some(true), "q = {q}: {o}");
        let o = r.get("translation plane with group BM when BM is abelian").unwrap();
        assert_eq!(o.conclusion, Some(true), "q = {q}: {o}");
    }
}

#[test]
fn decorated_m_not_normal_is_vacuous() {
    let r = proposition_battery(&build_plane(&decorated(4)).unwrap()).unwrap();
    assert!(!r.get("consequences of M normal").unwrap().hypothesis);
    let o = r.get("involutions are elations when n is even and k odd or n nonsquare").unwrap();
    assert!(!o.hypothesis, "n = 4 square and k = 2 even");
    let r8 = proposition_battery(&build_plane(&decorated(8)).unwrap()).unwrap();
    let o = r8.get("involutions are elations when n is even and k odd or n nonsquare").unwrap();
    assert_eq!(o.conclusion, Some(true), "{o}");
}

// Translations of the Heisenberg plane computed straight from fixed points:
// every point of L-infinity fixed and no affine point fixed.
#[test]
fn translations_match_fixed_point_count() {
    for q in [3, 4] {
        let t = heisenberg(field(q)).unwrap();
        let sp = build_plane(&t).unwrap();
        let plane = sp.plane();
        let direct: Vec<u32> = t
            .group()
            .elements()
            .filter(|&g| {
                let c = sp.collineation(g);
                plane.points_on(0).iter().all(|&p| c.point(p as usize) == p as usize)
                    && (0..plane.num_points())
                        .filter(|&p| !plane.incident(p, 0))
                        .all(|p| c.point(p) != p || g == 0)
            })
            .collect();
        let census = ElationCensus::new(&sp).unwrap();
        assert_eq!(census.translations().unwrap().to_vec(), direct);
        assert_eq!(direct.len(), (q * q) as usize);
        assert_eq!(&census.translations().unwrap(), t.bm());
    }
}

#[test]
fn likeable_translation_group_and_partition() {
    let l = Likeable::new(5, None).unwrap();
    let sp = build_plane(l.triple()).unwrap();
    let full = full_axial_elations(sp.plane(), 0).unwrap();
    assert_eq!(full.order(), 625);
    let census = ElationCensus::new(&sp).unwrap();
    assert_eq!(&census.translations().unwrap(), l.triple().bm());
    let r = proposition_battery(&sp).unwrap();
    assert!(r.contradictions().is_empty(), "{r}");
    let o = r.get("translation partition when B0 is nontrivial").unwrap();
    assert_eq!(o.conclusion, Some(true), "{o}");
}

#[test]
fn diagonal_matrix_is_homology() {
    let plane = softplane::plane::build_desarguesian(3).unwrap();
    let c = softplane::plane::linear_collineation(3, &[2, 0, 0, 0, 2, 0, 0, 0, 1]).unwrap();
    assert!(matches!(classify(&plane, &c).unwrap(), Perspectivity::Homology { .. }));
    let c = softplane::plane::linear_collineation(3, &[1, 0, 0, 0, 1, 0, 1, 0, 1]).unwrap();
    assert!(classify(&plane, &c).unwrap().is_elation());
}

#[test]
fn fano_involutions_are_elations() {
    let t = heisenberg(field(2)).unwrap();
    let g = t.group();
    let inv: Vec<u32> = g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).collect();
    assert_eq!(inv.len(), 5);
    let sp = build_plane(&t).unwrap();
    for x in inv {
        assert!(classify(sp.plane(), &sp.collineation(x)).unwrap().is_elation());
    }
    let r = proposition_battery(&sp).unwrap();
    let o = r.get("involutions are elations when n is even and k odd or n nonsquare").unwrap();
    assert_eq!(o.conclusion, Some(true), "{o}");
}
