// One pass/fail line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use softplane::algebra::{FieldAutomorphism, FiniteField};
use softplane::analysis::{classify, full_axial_elations, proposition_battery};
use softplane::constructions::{
    decorated_subgroup_search, extend_by_automorphism, heisenberg, Heisenberg, Likeable,
};
use softplane::converse::{
    extract_soft_triple, order_feasibility, search_soft_triples, sylow_reduction, SearchOptions,
    SOFT_PARITY, TWO_SQUARES,
};
use softplane::group::{catalog, center, center_and_series, Elem, Group, Subgroup};
use softplane::io::parse_semifield;
use softplane::plane::{
    build_desarguesian, build_plane, coordinatize_ptr, default_quadrilateral, planes_isomorphic,
    verify_plane_axioms, ProjectivePlane, PtrClass, SoftPlane, DEFAULT_NODE_BUDGET,
};
use softplane::soft::{check_conditions, verify_soft_triple};
use softplane::SoftTriple;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn field(q: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::of_order(q).unwrap())
}

fn semifield16() -> SoftTriple {
    let sf = parse_semifield(include_str!("../fixtures/semifield16.sf")).unwrap();
    assert!(sf.is_proper());
    heisenberg(Arc::new(sf)).unwrap()
}

fn decorated(q: u32) -> SoftTriple {
    let f = field(q);
    let h = Heisenberg::new(f.clone()).unwrap();
    extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1))
        .unwrap()
        .triple()
        .clone()
}

fn ptr_class(plane: &ProjectivePlane) -> Result<PtrClass, String> {
    let quad = default_quadrilateral(plane).map_err(|e| e.to_string())?;
    Ok(coordinatize_ptr(plane, quad).map_err(|e| e.to_string())?.class())
}

fn reverify(t: &SoftTriple) -> Result<(), String> {
    verify_soft_triple(t.group(), t.a(), t.b(), t.m())
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn plane_shape(sp: &SoftPlane, n: usize) -> Result<(), String> {
    let v = n * n + n + 1;
    ensure(sp.plane().num_points() == v, format!("{} points, expected {v}", sp.plane().num_points()))?;
    let order = verify_plane_axioms(v, &sp.plane().lines()).map_err(|e| e.to_string())?;
    ensure(order == n, format!("axiom check gives order {order}"))
}

fn heisenberg_fields() -> Check {
    for q in [2u32, 3, 4, 5, 8, 9, 16] {
        let t = heisenberg(field(q)).map_err(|e| e.to_string())?;
        reverify(&t)?;
        let n = q as usize;
        ensure((t.n(), t.k()) == (n, 1), format!("q = {q}: n, k = {}, {}", t.n(), t.k()))?;
        let sp = build_plane(&t).map_err(|e| e.to_string())?;
        plane_shape(&sp, n)?;
        if matches!(q, 2 | 3 | 5) {
            let pg = build_desarguesian(q).map_err(|e| e.to_string())?;
            let iso = planes_isomorphic(sp.plane(), &pg, true, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
            ensure(iso.is_some_and(|i| i.verify(sp.plane(), &pg)), format!("q = {q}: no isomorphism to PG(2,{q})"))?;
        } else {
            let c = ptr_class(sp.plane())?;
            ensure(c == PtrClass::Field, format!("q = {q}: ternary ring is {c:?}"))?;
        }
    }
    Ok("q = 2,3,5 isomorphic to PG(2,q); q = 4,8,9,16 coordinatize by a field".into())
}

fn semifield_plane() -> Check {
    let t = semifield16();
    reverify(&t)?;
    ensure(t.n() == 16 && t.k() == 1, "n, k")?;
    ensure(t.am().is_normal() && t.bm().is_normal(), "AM or BM not normal")?;
    let sp = build_plane(&t).map_err(|e| e.to_string())?;
    plane_shape(&sp, 16)?;
    let c = ptr_class(sp.plane())?;
    ensure(c == PtrClass::Semifield, format!("ternary ring is {c:?}"))?;
    Ok("AM, BM normal; coordinatizing ring is a semifield, not a field".into())
}

fn likeable_q5() -> Check {
    let l = Likeable::new(5, None).map_err(|e| e.to_string())?;
    let t = l.triple();
    reverify(t)?;
    ensure((t.n(), t.k(), t.group().order()) == (25, 1, 15625), "n, k, |G|")?;
    let sp = build_plane(t).map_err(|e| e.to_string())?;
    plane_shape(&sp, 25)?;
    let plane = sp.plane();
    let full = full_axial_elations(plane, 0).map_err(|e| e.to_string())?;
    ensure(full.order() == 625 && full.is_transitive(25), format!("|elations with axis L-inf| = {}", full.order()))?;
    // BM acting as collineations is the whole elation group
    let bm_maps: BTreeSet<Vec<u16>> = t.bm().elements().map(|x| sp.collineation(x).point_map().to_vec()).collect();
    let full_maps: BTreeSet<Vec<u16>> = full.point_maps().into_iter().map(|m| m.to_vec()).collect();
    ensure(bm_maps == full_maps, "BM differs from the elation group")?;
    ensure(t.a().is_elementary_abelian() && t.a().order() == 25, "A not elementary abelian of order 25")?;
    let s = center_and_series(t.group()).map_err(|e| e.to_string())?;
    ensure(s.center.order() == 5, format!("|Z| = {}", s.center.order()))?;
    let class = s.nilpotency_class;
    ensure(matches!(class, Some(4) | Some(5)), format!("class {class:?}"))?;
    // elations with axis L-inf and given center, read off by classification
    let with_center = |h: &Subgroup, w: usize| -> Result<usize, String> {
        let mut count = 0;
        for x in h.elements() {
            let c = classify(plane, &sp.collineation(x)).map_err(|e| e.to_string())?;
            if x == 0 || (c.is_elation() && c.center_axis() == Some((w, 0))) {
                count += 1;
            }
        }
        Ok(count)
    };
    let b0 = with_center(t.b(), sp.ideal_point())?;
    let m0 = with_center(t.m(), 0)?;
    ensure(b0 > 1, "B0 trivial")?;
    // n/|M0| = (|T:M0| - 1)/(|B0| - 1), cross-multiplied
    let lhs = 25 * (b0 - 1);
    let rhs = m0 * (625 / m0 - 1);
    ensure(lhs == rhs, format!("|M0| = {m0}, |B0| = {b0}: {lhs} != {rhs}"))?;
    Ok(format!("651 points, 625 transitive elations = BM, |Z| = 5, class {}, |M0| = {m0}, |B0| = {b0}", class.unwrap()))
}

fn decorated_sylow() -> Check {
    let t = decorated(8);
    reverify(&t)?;
    ensure((t.n(), t.k(), t.group().order()) == (8, 3, 1536), "n, k, |G|")?;
    let sp = build_plane(&t).map_err(|e| e.to_string())?;
    let (pa, lb) = (sp.base_point(), sp.base_line());
    let stab = t
        .group()
        .elements()
        .filter(|&x| {
            let c = sp.collineation(x);
            c.point(pa) == pa && c.line(lb) == lb
        })
        .count();
    ensure(stab == 3, format!("flag stabilizer of order {stab}"))?;
    let r = sylow_reduction(&t, 2).map_err(|e| e.to_string())?;
    reverify(&r.triple)?;
    let got = (r.triple.n(), r.triple.k(), r.triple.group().order());
    ensure(got == (8, 1, 512), format!("Sylow triple {got:?}"))?;
    let c = ptr_class(r.rebuilt.plane())?;
    ensure(c == PtrClass::Field, format!("Sylow plane ring is {c:?}"))?;
    // prime orders give desarguesian planes
    for q in [2u32, 3, 5] {
        let r = sylow_reduction(&heisenberg(field(q)).unwrap(), q as u64).map_err(|e| e.to_string())?;
        let pg = build_desarguesian(q).map_err(|e| e.to_string())?;
        let iso = planes_isomorphic(r.rebuilt.plane(), &pg, true, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), format!("n = {q} not desarguesian"))?;
    }
    Ok("(8, 3, 1536), flag stabilizer 3, Sylow 2-subgroup gives (8, 1, 512) over a field".into())
}

fn decorated_search() -> Check {
    let f = field(4);
    let h = Heisenberg::new(f.clone()).unwrap();
    let d = extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, 1)).map_err(|e| e.to_string())?;
    ensure(d.group().order() == 128, "decorated order")?;
    let cands = decorated_subgroup_search(&d).map_err(|e| e.to_string())?;
    let soft = cands.iter().filter(|c| c.soft.is_some()).count();
    let twisted = cands.iter().find(|c| {
        c.soft.as_ref().is_some_and(|h| {
            h.m_normal && !h.am_normal && !h.bm_normal && h.center_order < 4 && !h.contains_translations
        })
    });
    let c = twisted.ok_or_else(|| format!("none of {} index-2 subgroups ({soft} soft) has the pattern", cands.len()))?;
    ensure(c.subgroup.order() == 64, "hit of wrong order")?;
    reverify(&c.soft.as_ref().unwrap().triple)?;
    Ok(format!("{soft} of {} index-2 subgroups soft; one with M normal, AM and BM not, |Z| < 4, no full translations", cands.len()))
}

fn round_trip() -> Check {
    let fixtures = vec![
        ("GF(2)", heisenberg(field(2)).unwrap()),
        ("GF(3)", heisenberg(field(3)).unwrap()),
        ("GF(4)", heisenberg(field(4)).unwrap()),
        ("semifield 16", semifield16()),
        ("likeable 25", Likeable::new(5, None).unwrap().triple().clone()),
    ];
    for (name, t) in fixtures {
        let sp = build_plane(&t).map_err(|e| e.to_string())?;
        let h = sp
            .right_action()
            .and_then(|a| a.collineation_group())
            .map_err(|e| format!("{name}: {e}"))?;
        let r = extract_soft_triple(sp.plane(), &h).map_err(|e| format!("{name}: {e}"))?;
        reverify(&r.triple)?;
        ensure(r.isomorphism.verify(sp.plane(), r.rebuilt.plane()), format!("{name}: map is not an isomorphism"))?;
    }
    Ok("GF(2), GF(3), GF(4), semifield 16, likeable 25 recovered up to isomorphism".into())
}

// Subgroups of order 2 are the closures of single elements; every (A, B, M)
// is checked directly and pairs are canonicalized under conjugation.
fn brute_force(g: &Group) -> BTreeSet<(Vec<Elem>, Vec<Elem>)> {
    let subs: BTreeSet<Vec<Elem>> = g
        .elements()
        .map(|x| Subgroup::generated(g, &[x]).unwrap())
        .filter(|h| h.order() == 2)
        .map(|h| h.to_vec())
        .collect();
    let subs: Vec<Subgroup> = subs.into_iter().map(|v| Subgroup::from_elements(g, v).unwrap()).collect();
    let mut out = BTreeSet::new();
    for a in &subs {
        for b in &subs {
            if subs.iter().any(|m| check_conditions(g, a, b, m).unwrap().passed()) {
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

fn order_8_search() -> Check {
    let fano = build_desarguesian(2).map_err(|e| e.to_string())?;
    let mut with = Vec::new();
    for g in catalog::groups_of_order_8() {
        let report = search_soft_triples(&g, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let found: BTreeSet<_> = report.triples.keys().cloned().collect();
        ensure(found == brute_force(&g), format!("{}: search and brute force differ", g.label()))?;
        for t in report.triples.values() {
            reverify(t)?;
            let sp = build_plane(t).map_err(|e| e.to_string())?;
            let iso = planes_isomorphic(sp.plane(), &fano, false, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
            ensure(iso.is_some(), "plane is not the Fano plane")?;
        }
        if !found.is_empty() {
            with.push(g.label().to_string());
        }
    }
    ensure(with.len() == 1 && with[0].contains("D8"), format!("soft triples in {with:?}"))?;
    Ok("only D8 has soft triples, matching brute force; planes are Fano".into())
}

fn battery() -> Check {
    let fixtures = vec![
        heisenberg(field(2)).unwrap(),
        heisenberg(field(3)).unwrap(),
        heisenberg(field(4)).unwrap(),
        semifield16(),
        Likeable::new(5, None).unwrap().triple().clone(),
        decorated(4),
        decorated(8),
    ];
    let mut normal = 0;
    for t in &fixtures {
        let n = t.n();
        let sp = build_plane(t).map_err(|e| e.to_string())?;
        let r = proposition_battery(&sp).map_err(|e| e.to_string())?;
        ensure(r.contradictions().is_empty(), format!("n = {n}:\n{r}"))?;
        let parity = r.get("n = 2 mod 4 forces n = 2").ok_or("missing parity outcome")?;
        if n % 4 != 2 {
            ensure(!parity.hypothesis && parity.conclusion.is_none(), format!("n = {n}: parity outcome not vacuous"))?;
        }
        let m = r.get("consequences of M normal").ok_or("missing M normal outcome")?;
        ensure(m.hypothesis == t.m().is_normal(), "M normal hypothesis misreported")?;
        if t.m().is_normal() {
            normal += 1;
            let g = t.group().order();
            ensure(m.conclusion == Some(true), format!("n = {n}: {m}"))?;
            ensure(t.a().intersection(t.b()).is_trivial(), "A n B nontrivial")?;
            ensure(g == n.pow(3), "|G| != n^3")?;
            ensure(g % 2 == 1 || g.is_power_of_two(), "|G| even and not a power of 2")?;
            ensure(!center(t.group()).is_trivial(), "trivial center")?;
        } else {
            ensure(m.conclusion.is_none(), "M not normal but outcome not vacuous")?;
        }
    }
    Ok(format!("{} fixtures without contradiction, {normal} with M normal", fixtures.len()))
}

fn feasibility() -> Check {
    for n in [6u64, 10, 14] {
        let f = order_feasibility(n).map_err(|e| e.to_string())?;
        ensure(!f.feasible() && f.rejections().any(|v| v.filter == SOFT_PARITY), format!("{f}"))?;
    }
    for n in [21u64, 33] {
        let f = order_feasibility(n).map_err(|e| e.to_string())?;
        let rej: Vec<_> = f.rejections().map(|v| v.filter).collect();
        ensure(rej == [TWO_SQUARES], format!("{f}"))?;
    }
    for n in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        ensure(order_feasibility(n).map_err(|e| e.to_string())?.feasible(), format!("n = {n} rejected"))?;
    }
    Ok("6, 10, 14 fail the parity filter; 21, 33 fail two squares; the rest pass".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("heisenberg over fields", heisenberg_fields, Duration::from_secs(10)),
        ("semifield plane", semifield_plane, Duration::from_secs(30)),
        ("likeable q = 5", likeable_q5, Duration::from_secs(300)),
        ("decorated GF(8) and Sylow reduction", decorated_sylow, Duration::from_secs(120)),
        ("decorated GF(4) subgroup search", decorated_search, Duration::from_secs(120)),
        ("converse round trip", round_trip, Duration::from_secs(300)),
        ("order 8 search against brute force", order_8_search, Duration::from_secs(10)),
        ("battery regression", battery, Duration::from_secs(300)),
        ("order feasibility", feasibility, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > *budget => Err(format!("took {took:.1?}, budget {budget:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({took:.1?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({took:.1?}) {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
