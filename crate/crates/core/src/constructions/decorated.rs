use rayon::prelude::*;

use super::{Heisenberg, Likeable};
use crate::algebra::FieldAutomorphism;
use crate::group::{centralizer, index_p_subgroups, Elem, Group, GroupLaw, Restriction, Subgroup};
use crate::limits;
use crate::plane::build_plane;
use crate::soft::{verify_soft_triple, SoftTriple};
use crate::{Error, Result};

/// A soft group whose elements can be acted on entrywise by a field
/// automorphism.
pub trait EntrywiseAutomorphism {
    fn soft_triple(&self) -> &SoftTriple;
    /// Image table of the entrywise action of `alpha`.
    fn automorphism_table(&self, alpha: &FieldAutomorphism) -> Result<Vec<Elem>>;
}

impl EntrywiseAutomorphism for Heisenberg {
    fn soft_triple(&self) -> &SoftTriple {
        self.triple()
    }

    fn automorphism_table(&self, alpha: &FieldAutomorphism) -> Result<Vec<Elem>> {
        self.entrywise(alpha)
    }
}

impl EntrywiseAutomorphism for Likeable {
    fn soft_triple(&self) -> &SoftTriple {
        self.triple()
    }

    fn automorphism_table(&self, alpha: &FieldAutomorphism) -> Result<Vec<Elem>> {
        if alpha.field().order() != self.field().order() {
            return Err(Error::Construction("automorphism of a different field".into()));
        }
        Ok(self.entrywise(alpha))
    }
}

/// `G ⋊ ⟨σ⟩` with id `g + |G|·i` for `g σ^i` and
/// `(g, i)(h, j) = (g·σ^i(h), i + j)`.
struct DecoratedLaw {
    base: Group,
    powers: Vec<Vec<Elem>>,
}

impl DecoratedLaw {
    fn n(&self) -> u32 {
        self.base.order() as u32
    }
}

impl GroupLaw for DecoratedLaw {
    fn order(&self) -> usize {
        self.base.order() * self.powers.len()
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let n = self.n();
        let p = self.powers.len() as u32;
        let (g, i) = (x % n, x / n);
        let (h, j) = (y % n, y / n);
        self.base.mul(g, self.powers[i as usize][h as usize]) + n * ((i + j) % p)
    }

    fn inv(&self, x: Elem) -> Elem {
        let n = self.n();
        let p = self.powers.len() as u32;
        let (g, i) = (x % n, x / n);
        let back = ((p - i) % p) as usize;
        self.powers[back][self.base.inv(g) as usize] + n * (back as u32)
    }
}

/// A soft triple extended by an automorphism of order `p` that leaves `A`,
/// `B` and `M` invariant.
#[derive(Clone, Debug)]
pub struct Decorated {
    base: SoftTriple,
    p: u32,
    triple: SoftTriple,
}

impl Decorated {
    pub fn base(&self) -> &SoftTriple {
        &self.base
    }

    pub fn triple(&self) -> &SoftTriple {
        &self.triple
    }

    pub fn group(&self) -> &Group {
        self.triple.group()
    }

    /// Order of the automorphism.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// The element `σ` itself.
    pub fn alpha(&self) -> Elem {
        self.base.group().order() as Elem
    }

    /// The base group `G` as a subgroup of the extension.
    pub fn base_subgroup(&self) -> Result<Subgroup> {
        Subgroup::from_elements(self.group(), 0..self.base.group().order() as Elem)
    }
}

/// Extends `t` by the automorphism with image table `sigma`. Checks that
/// `sigma` is a bijective homomorphism of order `p > 1` preserving `A`, `B`
/// and `M`, then verifies the extended triple.
pub fn decorate(t: &SoftTriple, sigma: Vec<Elem>) -> Result<Decorated> {
    let g = t.group();
    let n = g.order();
    if sigma.len() != n {
        return Err(Error::Construction("automorphism table has the wrong length".into()));
    }
    let mut seen = vec![false; n];
    for &s in &sigma {
        if s as usize >= n || std::mem::replace(&mut seen[s as usize], true) {
            return Err(Error::Construction("automorphism table is not a bijection".into()));
        }
    }
    for x in g.elements() {
        for &y in g.generators() {
            if sigma[g.mul(x, y) as usize] != g.mul(sigma[x as usize], sigma[y as usize]) {
                return Err(Error::Construction(format!(
                    "not a homomorphism at ({x}, {y})"
                )));
            }
        }
    }
    let mut powers = vec![(0..n as Elem).collect::<Vec<_>>()];
    loop {
        let last = powers.last().unwrap();
        let next: Vec<Elem> = last.iter().map(|&x| sigma[x as usize]).collect();
        if next.iter().enumerate().all(|(i, &x)| x as usize == i) {
            break;
        }
        powers.push(next);
    }
    let p = powers.len();
    if p == 1 {
        return Err(Error::Construction("no nontrivial automorphism".into()));
    }
    limits::check_elements("decorated group", n * p)?;
    for (name, h) in [("A", t.a()), ("B", t.b()), ("M", t.m())] {
        if let Some(x) = h.elements().find(|&x| !h.contains(sigma[x as usize])) {
            return Err(Error::Construction(format!(
                "the automorphism does not preserve {name}: moves {x} outside"
            )));
        }
    }
    let law = DecoratedLaw {
        base: g.clone(),
        powers,
    };
    let big = Group::structured(Box::new(law), format!("{}<a{p}>", g.label()))?;
    let n = n as Elem;
    let lift = |h: &Subgroup| {
        let mut gens: Vec<Elem> = h.generators().to_vec();
        gens.push(n);
        Subgroup::generated(&big, &gens)
    };
    let triple = verify_soft_triple(&big, &lift(t.a())?, &lift(t.b())?, &lift(t.m())?)?;
    Ok(Decorated {
        base: t.clone(),
        p: p as u32,
        triple,
    })
}

/// `G⟨α⟩` with `α` acting entrywise.
pub fn extend_by_automorphism<C: EntrywiseAutomorphism>(
    base: &C,
    alpha: &FieldAutomorphism,
) -> Result<Decorated> {
    if alpha.is_identity() {
        return Err(Error::Construction("no nontrivial automorphism".into()));
    }
    decorate(base.soft_triple(), base.automorphism_table(alpha)?)
}

/// One index-`p` subgroup examined by [`decorated_subgroup_search`].
#[derive(Clone, Debug)]
pub struct DecoratedCandidate {
    pub subgroup: Subgroup,
    /// Size of the orbit of the base flag `(A, B)` under the subgroup.
    pub flag_orbit: usize,
    pub soft: Option<DecoratedHit>,
}

#[derive(Clone, Debug)]
pub struct DecoratedHit {
    /// The triple inside the subgroup, relabelled as a group of its own.
    pub triple: SoftTriple,
    pub restriction: Restriction,
    pub m_normal: bool,
    pub am_normal: bool,
    pub bm_normal: bool,
    pub center_order: usize,
    pub contains_translations: bool,
}

/// Elements of the extension acting on its plane as translations, i.e.
/// fixing every point of `L∞` and no affine point, together with the
/// identity.
pub fn translations(d: &Decorated) -> Result<Subgroup> {
    let sp = build_plane(d.triple())?;
    let plane = sp.plane();
    let at_infinity: Vec<usize> = plane.points_on(0).iter().map(|&p| p as usize).collect();
    let g = d.group();
    let elems = g.elements().filter(|&x| {
        let c = sp.collineation(x);
        at_infinity.iter().all(|&p| c.point(p) == p)
            && (c.is_identity()
                || (0..plane.num_points()).all(|p| plane.incident(p, 0) || c.point(p) != p))
    });
    Subgroup::from_elements(g, elems)
}

/// Examines every index-`p` subgroup of a decorated `p`-group for softness.
/// A subgroup `H` of order `n³` acts on the plane of the extension with
/// base-flag orbit `|H : H ∩ A ∩ B|`; when that is `n³` it is soft with
/// triple `(H ∩ A, H ∩ B, H ∩ M)`, which is then verified.
pub fn decorated_subgroup_search(d: &Decorated) -> Result<Vec<DecoratedCandidate>> {
    let t = d.triple();
    let g = t.group();
    let p = d.p() as u64;
    if !g.is_p_group(p) {
        return Err(Error::InvalidInput(format!(
            "decorated group of order {} is not a {p}-group",
            g.order()
        )));
    }
    let n = t.n();
    let trans = translations(d)?;
    let full_translations = trans.order() == n * n;
    let flag_stab = t.a().intersection(t.b());
    let subgroups = index_p_subgroups(g, p)?;
    subgroups
        .into_par_iter()
        .map(|h| {
            let flag_orbit = h.order() / h.intersection(&flag_stab).order();
            let soft = if flag_orbit == n * n * n {
                let (a, b, m) = (h.intersection(t.a()), h.intersection(t.b()), h.intersection(t.m()));
                let r = Restriction::new(&h)?;
                let triple = verify_soft_triple(r.group(), &r.restrict(&a)?, &r.restrict(&b)?, &r.restrict(&m)?)?;
                let center = centralizer(&h, h.generators());
                Some(DecoratedHit {
                    m_normal: triple.m().is_normal(),
                    am_normal: triple.am().is_normal(),
                    bm_normal: triple.bm().is_normal(),
                    center_order: center.order(),
                    contains_translations: full_translations && trans.is_subgroup_of(&h),
                    triple,
                    restriction: r,
                })
            } else {
                None
            };
            Ok(DecoratedCandidate {
                subgroup: h,
                flag_orbit,
                soft,
            })
        })
        .collect()
}
