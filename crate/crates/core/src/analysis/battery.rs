use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::elations::{full_axial_elations, AxialElations, ElationCensus, AXIAL_MAX_ORDER};
use crate::algebra::prime_power;
use crate::group::{
    all_subgroups, center, centralizer, commutator_subgroup, p_part, product_set, Elem,
    Restriction, Subgroup,
};
use crate::plane::{coordinatize_ptr, default_quadrilateral, PtrClass, SoftPlane};
use crate::soft::{check_conditions, SoftTriple};
use crate::Result;

/// Largest group order for which every normal subgroup is tried as a
/// candidate in the abelian-normal-subgroup check.
pub const NORMAL_SCAN_MAX_ORDER: usize = 128;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub key: &'static str,
    pub hypothesis: bool,
    /// `None` when the hypothesis fails (vacuous).
    pub conclusion: Option<bool>,
    pub detail: String,
    pub witness: Vec<Elem>,
}

impl Outcome {
    pub fn is_contradiction(&self) -> bool {
        self.hypothesis && self.conclusion == Some(false)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.conclusion {
            None => "vacuous",
            Some(true) => "verified",
            Some(false) => "CONTRADICTION",
        };
        write!(f, "{}: {status} ({})", self.key, self.detail)?;
        if !self.witness.is_empty() {
            write!(f, " witness {:?}", self.witness)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub k: usize,
    pub group_order: usize,
    pub outcomes: Vec<Outcome>,
}

impl StructureReport {
    pub fn contradictions(&self) -> Vec<&Outcome> {
        self.outcomes.iter().filter(|o| o.is_contradiction()).collect()
    }

    pub fn get(&self, key: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.key == key)
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, k = {}, |G| = {}", self.n, self.k, self.group_order)?;
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Accumulates named sub-conclusions.
#[derive(Default)]
struct Clauses {
    items: Vec<(String, bool)>,
    witness: Vec<Elem>,
}

impl Clauses {
    fn add(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.items.push((name.into(), ok));
        self
    }

    fn outcome(self, key: &'static str, hypothesis: bool, why: String) -> Outcome {
        if !hypothesis {
            return Outcome {
                key,
                hypothesis,
                conclusion: None,
                detail: why,
                witness: Vec::new(),
            };
        }
        let ok = self.items.iter().all(|(_, b)| *b);
        let listed: Vec<String> = self
            .items
            .iter()
            .map(|(n, b)| if *b { n.clone() } else { format!("FAILED {n}") })
            .collect();
        let detail = if why.is_empty() {
            listed.join("; ")
        } else {
            format!("{why}; {}", listed.join("; "))
        };
        Outcome {
            key,
            hypothesis,
            conclusion: Some(ok),
            detail,
            witness: if ok { Vec::new() } else { self.witness },
        }
    }
}

fn bits(t: &SoftTriple, elems: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(t.group().order());
    s.insert(0);
    for x in elems {
        s.insert(x as usize);
    }
    s
}

fn divides(a: usize, b: usize) -> bool {
    a != 0 && b % a == 0
}

/// Shared data for all checks.
struct Ctx<'a> {
    t: &'a SoftTriple,
    sp: &'a SoftPlane,
    census: ElationCensus,
    /// `Γ(L∞) ∩ G` and `Γ(∞) ∩ G`.
    gl: Subgroup,
    gi: Subgroup,
    a0: FixedBitSet,
    b0: FixedBitSet,
    m0: FixedBitSet,
    full: Option<AxialElations>,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.t.n()
    }

    /// Whether the plane is a translation plane with respect to `L∞`,
    /// decided by elation synthesis when the order allows and otherwise
    /// only when the group already contains `n²` translations.
    fn translation_plane(&self) -> Option<bool> {
        match &self.full {
            Some(f) => Some(f.is_transitive(self.n())),
            None => (self.gl.order() == self.n() * self.n()).then_some(true),
        }
    }

    fn sub(&self, set: &FixedBitSet) -> Result<Subgroup> {
        Subgroup::from_set(self.t.group(), set.clone())
    }
}

/// Hypothesis-first checks of the structural consequences of softness for
/// a triple, its plane and its elations.
pub fn proposition_battery(sp: &SoftPlane) -> Result<StructureReport> {
    let t = sp.triple();
    let census = ElationCensus::new(sp)?;
    let gl = census.translations()?;
    let gi = census.central()?;
    let a0 = bits(t, census.elations_in(t.a()));
    let b0 = bits(t, census.elations_in(t.b()));
    let m0 = bits(t, census.elations_in(t.m()));
    let full = if sp.order() <= AXIAL_MAX_ORDER {
        Some(full_axial_elations(sp.plane(), 0)?)
    } else {
        None
    };
    let ctx = Ctx {
        t,
        sp,
        census,
        gl,
        gi,
        a0,
        b0,
        m0,
        full,
    };
    let outcomes = vec![
        translation_from_b_conjugates(&ctx)?,
        semifield_when_products_normal(&ctx)?,
        translation_when_bm_abelian(&ctx)?,
        abelian_normal_subgroups(&ctx)?,
        elation_subgroups(&ctx)?,
        homology_orders(&ctx),
        translation_partition(&ctx)?,
        involutions_are_elations(&ctx)?,
        order_two_mod_four(&ctx),
        normal_m(&ctx)?,
        m_centralized_in_b(&ctx),
    ];
    Ok(StructureReport {
        n: t.n(),
        k: t.k(),
        group_order: t.group().order(),
        outcomes,
    })
}

fn translation_from_b_conjugates(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let g = t.group();
    let conj: Vec<Elem> = t
        .b()
        .generators()
        .iter()
        .flat_map(|&b| t.a().elements().map(move |a| g.conj(b, a)))
        .collect();
    let s = Subgroup::generated(g, &conj)?;
    let hyp = s.is_subgroup_of(t.bm());
    let mut cl = Clauses::default();
    if hyp {
        cl.add("n is a prime power", prime_power(c.n() as u32).is_some());
        cl.add("BM normal", t.bm().is_normal());
        match c.translation_plane() {
            Some(tp) => cl.add("translation plane", tp),
            None => cl.add("translation plane (undecided above the synthesis cap)", true),
        };
        cl.add("translations of G lie in BM", c.gl.is_subgroup_of(t.bm()));
    }
    Ok(cl.outcome(
        "translation plane when B-conjugates under A lie in BM",
        hyp,
        format!("<B^A> has order {}", s.order()),
    ))
}

fn semifield_when_products_normal(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let both_normal = t.am().is_normal() && t.bm().is_normal();
    let ab = commutator_subgroup(t.a(), t.b())?;
    let comm_in_m = ab.is_subgroup_of(t.m());
    let hyp = both_normal || comm_in_m;
    let mut cl = Clauses::default();
    if hyp {
        let plane = c.sp.plane();
        let ring = coordinatize_ptr(plane, default_quadrilateral(plane)?)?;
        cl.add(
            format!("flag-aligned ternary ring is a {}", ring.class()),
            ring.class() != PtrClass::Other,
        );
        let nrm = c.gi.join(&c.gl)?;
        let n3 = c.n().pow(3);
        cl.add(format!("<central, translations> has order n^3 (got {})", nrm.order()), nrm.order() == n3);
        if nrm.order() == n3 {
            let r = Restriction::new(&nrm)?;
            let sub = |h: &Subgroup| r.restrict(&h.intersection(&nrm));
            let report = check_conditions(r.group(), &sub(t.a())?, &sub(t.b())?, &sub(t.m())?)?;
            cl.add("it is soft with k = 1", report.passed() && report.k == 1);
        }
    }
    Ok(cl.outcome(
        "semifield plane when AM and BM are normal or [A,B] lies in M",
        hyp,
        format!("AM, BM normal: {both_normal}; [A,B] in M: {comm_in_m}"),
    ))
}

fn translation_when_bm_abelian(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let hyp = t.bm().is_abelian();
    let n = c.n();
    let mut cl = Clauses::default();
    if hyp {
        cl.add("n is a prime power", prime_power(n as u32).is_some());
        cl.add("|BM| = n^2", t.bm().order() == n * n);
        cl.add("BM elementary abelian", t.bm().is_elementary_abelian());
        cl.add("BM normal", t.bm().is_normal());
        cl.add("translations of G are BM", &c.gl == t.bm());
        if let Some(tp) = c.translation_plane() {
            cl.add("translation plane", tp);
        }
    }
    Ok(cl.outcome("translation plane with group BM when BM is abelian", hyp, String::new()))
}

fn abelian_normal_subgroups(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let g = t.group();
    let n = c.n();
    let mut cands = vec![
        t.bm().clone(),
        t.am().clone(),
        c.gl.clone(),
        c.gi.clone(),
        center(g),
    ];
    let scanned = g.order() <= NORMAL_SCAN_MAX_ORDER;
    if scanned {
        cands.extend(all_subgroups(g)?.into_iter().filter(|h| h.is_normal()));
    }
    let mut seen = BTreeSet::new();
    let mut tested = 0;
    let mut cl = Clauses::default();
    for nn in cands {
        if nn.order() < n * n || !nn.is_abelian() || !nn.is_normal() || !seen.insert(nn.to_vec()) {
            continue;
        }
        tested += 1;
        let sq = nn.order() == n * n;
        let translation = sq && nn.is_subgroup_of(&c.gl);
        let dual = sq && nn.is_subgroup_of(&c.gi);
        let a_n = t.a().intersection(&nn).order();
        let b_n = t.b().intersection(&nn).order();
        let third = sq
            && nn.order() / a_n == n * n
            && nn.order() / b_n == n * n
            && a_n == 1
            && b_n == 1
            && t.a().order() * nn.order() == g.order()
            && t.b().order() * nn.order() == g.order();
        let ok = translation || dual || third;
        if !ok && cl.witness.is_empty() {
            cl.witness = nn.generators().to_vec();
        }
        cl.add(
            format!(
                "N of order {}: {}",
                nn.order(),
                if translation {
                    "translation group"
                } else if dual {
                    "dual translation group"
                } else if third {
                    "regular on affine points and lines, complementing A and B"
                } else {
                    "no alternative holds"
                }
            ),
            ok,
        );
    }
    let why = format!(
        "{tested} abelian normal subgroups of order >= n^2 among {}",
        if scanned { "all normal subgroups" } else { "BM, AM, the elation groups and Z(G)" }
    );
    Ok(cl.outcome("abelian normal subgroups of order at least n^2", tested > 0, why))
}

fn elation_subgroups(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let sp = c.sp;
    let n = c.n();
    let (inf, il, ip) = (0, sp.ideal_line(), sp.ideal_point());
    let mut cl = Clauses::default();
    let eq = |x: &FixedBitSet, h: &Subgroup| x == h.members();
    cl.add("A0 = elations with center infinity and axis the ideal line", eq(&c.a0, &c.census.gamma(inf, il)?));
    cl.add("B0 = elations with center the ideal point and axis L-infinity", eq(&c.b0, &c.census.gamma(ip, 0)?));
    cl.add("M0 = elations with center infinity and axis L-infinity", eq(&c.m0, &c.census.gamma(inf, 0)?));
    let (a0, b0, m0) = (c.sub(&c.a0)?, c.sub(&c.b0)?, c.sub(&c.m0)?);
    cl.add("M0 normal", m0.is_normal());
    let g = t.group();
    let mut core = t.m().members().clone();
    for x in g.elements() {
        core.intersect_with(t.m().conjugate(x).members());
    }
    cl.add("M0 contains the normal core of M", core.is_subset(&c.m0));
    cl.add(
        "M normalizes A0 and B0",
        t.m().generators().iter().all(|&m| a0.normalized_by(m) && b0.normalized_by(m)),
    );
    cl.add(
        format!("|A0| = {}, |B0| = {}, |M0| = {} divide n", a0.order(), b0.order(), m0.order()),
        divides(a0.order(), n) && divides(b0.order(), n) && divides(m0.order(), n),
    );
    let stray: Vec<Elem> = c
        .census
        .elations()
        .into_iter()
        .filter(|&x| !c.gl.contains(x) && !c.gi.contains(x))
        .collect();
    cl.add("every elation has center infinity or axis L-infinity", stray.is_empty());
    cl.witness = stray.into_iter().take(1).collect();
    Ok(cl.outcome("elation subgroups of A, B and M", true, String::new()))
}

fn homology_orders(c: &Ctx) -> Outcome {
    let g = c.t.group();
    let n = c.n();
    let homs = c.census.homologies();
    let bad: Vec<Elem> = homs
        .iter()
        .copied()
        .filter(|&h| (n as u64 - 1) % g.element_order(h) != 0)
        .collect();
    let mut cl = Clauses::default();
    cl.add(format!("{} homologies, orders divide n-1", homs.len()), bad.is_empty());
    cl.witness = bad.into_iter().take(1).collect();
    cl.outcome("homology orders divide n-1", true, String::new())
}

fn translation_partition(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let g = t.group();
    let n = c.n();
    let b0 = c.sub(&c.b0)?;
    let hyp = b0.order() > 1;
    let mut cl = Clauses::default();
    if hyp {
        let gl = &c.gl;
        cl.add("translations of G elementary abelian", gl.is_elementary_abelian());
        let p = (2..).find(|d| gl.order() % d == 0).unwrap_or(1);
        let m0 = c.m0.count_ones(..);
        // the sets B0^a minus 1
        let mut parts: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for a in t.a().elements() {
            parts.insert(b0.conjugate(a).elements().filter(|&x| x != 0).collect());
        }
        let mut union = FixedBitSet::with_capacity(g.order());
        let mut disjoint = true;
        for part in &parts {
            for &x in part {
                disjoint &= !union.put(x as usize);
            }
        }
        let mut rest = gl.members().clone();
        rest.difference_with(&c.m0);
        cl.add(format!("{} distinct conjugates of B0, n = {n}", parts.len()), parts.len() == n);
        cl.add("they partition translations minus M0", disjoint && union == rest);
        let invariant = g.generators().iter().all(|&x| {
            parts.iter().all(|part| {
                let mut img: Vec<Elem> = part.iter().map(|&y| g.conj(y, x)).collect();
                img.sort_unstable();
                parts.contains(&img)
            })
        });
        cl.add("the partition is G-invariant", invariant);
        let idx = gl.order() / m0;
        let b = b0.order();
        cl.add(
            format!("n/|M0| = (|T:M0| - 1)/(|B0| - 1) with |T| = {}, |M0| = {m0}, |B0| = {b}", gl.order()),
            n * (b - 1) == m0 * (idx - 1),
        );
        let np = p_part(n as u64, p as u64) as usize;
        cl.add(format!("|M0| = n_p = {np} >= |B0| > 1"), m0 == np && np >= b && b > 1);
        if np != n {
            let q = n / np;
            cl.add(
                "|B0| is the p-part of n/n_p - 1",
                b == p_part(q as u64 - 1, p as u64) as usize,
            );
            cl.add("|T| = |M0|(1 + (n/n_p)(|B0| - 1))", gl.order() == m0 * (1 + q * (b - 1)));
            let a0 = c.sub(&c.a0)?;
            if a0.order() > 1 {
                let gi = &c.gi;
                cl.add("|A0| = |B0|", a0.order() == b);
                cl.add("|central| = |translations|", gi.order() == gl.order());
                let prod = gi.join(gl)?;
                let z = centralizer(&prod, prod.generators());
                let d = commutator_subgroup(&prod, &prod)?;
                let meet = gi.intersection(gl);
                cl.add(
                    "their product has class 2 with center M0 = their intersection",
                    !prod.is_abelian() && d.is_subgroup_of(&z) && z.members() == &c.m0 && meet.members() == &c.m0,
                );
                let commute = gi.elements().filter(|x| !c.m0.contains(*x as usize)).any(|x| {
                    gl.elements()
                        .filter(|y| !c.m0.contains(*y as usize))
                        .any(|y| g.mul(x, y) == g.mul(y, x))
                });
                cl.add("elements outside M0 never commute", !commute);
            } else {
                cl.add("A0 trivial: class-2 clause not applicable", true);
            }
        } else {
            cl.add("n is a power of p: order-determination clauses not applicable", true);
        }
    }
    Ok(cl.outcome(
        "translation partition when B0 is nontrivial",
        hyp,
        format!("|B0| = {}", b0.order()),
    ))
}

fn is_square(n: usize) -> bool {
    let r = (n as f64).sqrt().round() as usize;
    r * r == n
}

fn involutions_are_elations(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let g = t.group();
    let n = c.n();
    let hyp = n % 2 == 0 && (t.k() % 2 == 1 || !is_square(n));
    let mut cl = Clauses::default();
    if hyp {
        let stray: Vec<Elem> = g
            .elements()
            .filter(|&x| x != 0 && g.mul(x, x) == 0)
            .filter(|&x| !c.gl.contains(x) && !c.gi.contains(x))
            .collect();
        cl.add("all involutions lie in the elation groups", stray.is_empty());
        cl.witness = stray.into_iter().take(1).collect();
        let (a0, b0, m0) = (c.sub(&c.a0)?, c.sub(&c.b0)?, c.sub(&c.m0)?);
        let direct = |x: &Subgroup, y: &Subgroup, big: &Subgroup| {
            x.is_subgroup_of(big) && y.is_subgroup_of(big) && x.intersection(y).is_trivial()
        };
        cl.add("translations contain B0 x M0", direct(&b0, &m0, &c.gl));
        cl.add("central elations contain A0 x M0", direct(&a0, &m0, &c.gi));
        cl.add(
            "both are elementary abelian 2-groups",
            c.gl.is_elementary_abelian() && c.gi.is_elementary_abelian() && g.order() % 2 == 0,
        );
        let prod = c.gi.join(&c.gl)?;
        let z = centralizer(&prod, prod.generators());
        let d = commutator_subgroup(&prod, &prod)?;
        cl.add("their product has class at most 2", d.is_subgroup_of(&z));
    }
    Ok(cl.outcome(
        "involutions are elations when n is even and k odd or n nonsquare",
        hyp,
        format!("n = {n}, k = {}", t.k()),
    ))
}

fn order_two_mod_four(c: &Ctx) -> Outcome {
    let n = c.n();
    let hyp = n % 4 == 2;
    let mut cl = Clauses::default();
    cl.add("n = 2", n == 2);
    cl.outcome("n = 2 mod 4 forces n = 2", hyp, format!("n = {n}"))
}

fn normal_m(c: &Ctx) -> Result<Outcome> {
    let t = c.t;
    let g = t.group();
    let n = c.n();
    let hyp = t.m().is_normal();
    let mut cl = Clauses::default();
    if hyp {
        cl.add("M = M0", t.m().members() == &c.m0);
        cl.add("A n B = 1", t.a().intersection(t.b()).is_trivial());
        cl.add("|M| = n", t.m().order() == n);
        cl.add("|G| = n^3", g.order() == n.pow(3));
        cl.add("|G| odd or a power of 2", g.order() % 2 == 1 || g.order().is_power_of_two());
        let am = product_set(g, t.a().members(), t.m().members())?;
        let amb = product_set(g, &am, t.b().members())?;
        cl.add(
            "g = amb uniquely",
            t.a().order() * t.m().order() * t.b().order() == g.order() && amb.count_ones(..) == g.order(),
        );
    }
    Ok(cl.outcome("consequences of M normal", hyp, String::new()))
}

fn m_centralized_in_b(c: &Ctx) -> Outcome {
    let t = c.t;
    let cb = centralizer(t.b(), t.m().generators());
    let normal = t.m().is_normal();
    let hyp = normal && !cb.is_trivial();
    let mut cl = Clauses::default();
    if hyp {
        cl.add("M elementary abelian", t.m().is_elementary_abelian());
        cl.add("|M| = n", t.m().order() == c.n());
    }
    cl.outcome(
        "M elementary abelian of order n when M is normal and centralized by part of B",
        hyp,
        format!("M normal: {normal}; |C_B(M)| = {}", cb.order()),
    )
}
