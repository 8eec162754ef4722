use std::collections::HashSet;

use crate::algebra::prime_power;
use crate::group::{sylow_subgroup, Elem, Subgroup};
use crate::plane::{build_plane, CollineationGroup, Isomorphism, ProjectivePlane, SoftPlane};
use crate::soft::{verify_soft_triple, SoftTriple};
use crate::{Error, Result};

/// A soft triple recovered from a plane and a collineation group, with the
/// isomorphism from the given plane to the plane the triple builds.
#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub triple: SoftTriple,
    pub rebuilt: SoftPlane,
    /// `(Ā, B̄)`.
    pub flag: (usize, usize),
    /// `(∞̄, L̄∞)`, fixed by the group.
    pub fixed_flag: (usize, usize),
    pub ideal_line: usize,
    pub ideal_point: usize,
    pub isomorphism: Isomorphism,
}

/// Flags `(p, l)` numbered `p·(n+1) + i` where `l` is the `i`-th line on `p`.
struct Flags<'a> {
    plane: &'a ProjectivePlane,
    r: usize,
}

impl<'a> Flags<'a> {
    fn new(plane: &'a ProjectivePlane) -> Self {
        Flags {
            plane,
            r: plane.order() + 1,
        }
    }

    fn count(&self) -> usize {
        self.plane.num_points() * self.r
    }

    fn id(&self, p: usize, l: usize) -> usize {
        let i = self
            .plane
            .lines_through(p)
            .iter()
            .position(|&x| x as usize == l)
            .expect("incident flag");
        p * self.r + i
    }

    fn flag(&self, id: usize) -> (usize, usize) {
        let p = id / self.r;
        (p, self.plane.lines_through(p)[id % self.r] as usize)
    }
}

/// Orbit id of every flag under the group's generators, and orbit sizes.
fn flag_orbits(plane: &ProjectivePlane, h: &CollineationGroup) -> (Vec<u32>, Vec<usize>) {
    let flags = Flags::new(plane);
    let mut orbit = vec![u32::MAX; flags.count()];
    let mut sizes = Vec::new();
    for start in 0..flags.count() {
        if orbit[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        orbit[start] = id;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(f) = stack.pop() {
            size += 1;
            let (p, l) = flags.flag(f);
            for g in h.generators() {
                let img = flags.id(g.point(p), g.line(l));
                if orbit[img] == u32::MAX {
                    orbit[img] = id;
                    stack.push(img);
                }
            }
        }
        sizes.push(size);
    }
    (orbit, sizes)
}

fn point_orbit(h: &CollineationGroup, start: usize) -> HashSet<usize> {
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in h.generators() {
            if seen.insert(g.point(x)) {
                stack.push(g.point(x));
            }
        }
    }
    seen
}

fn line_orbit(h: &CollineationGroup, start: usize) -> HashSet<usize> {
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in h.generators() {
            if seen.insert(g.line(x)) {
                stack.push(g.line(x));
            }
        }
    }
    seen
}

fn unique<T: Copy + std::fmt::Debug>(what: &str, mut it: impl Iterator<Item = T>) -> Result<T> {
    let first = it
        .next()
        .ok_or_else(|| Error::Extraction(format!("no {what}")))?;
    if let Some(second) = it.next() {
        return Err(Error::Extraction(format!("{what} is not unique: {first:?} and {second:?}")));
    }
    Ok(first)
}

/// Orbit sizes, in increasing order, of `h` on the flags `(w, W)` with
/// `w ∉ L` and `p ∉ W` for a flag `(p, L)` fixed by `h`.
pub fn opposite_flag_census(
    plane: &ProjectivePlane,
    h: &CollineationGroup,
    fixed: (usize, usize),
) -> Result<Vec<usize>> {
    let (p, l) = fixed;
    if !plane.incident(p, l) {
        return Err(Error::InvalidInput(format!("point {p} is not on line {l}")));
    }
    if !h.fixes_flag(p, l) {
        return Err(Error::InvalidInput(format!("the group does not fix the flag ({p}, {l})")));
    }
    let n = plane.order();
    let opposite: Vec<(usize, usize)> = (0..plane.num_points())
        .filter(|&w| !plane.incident(w, l))
        .flat_map(|w| {
            plane
                .lines_through(w)
                .iter()
                .map(move |&x| (w, x as usize))
                .filter(|&(_, x)| !plane.incident(p, x))
        })
        .collect();
    if opposite.len() != n * n * n {
        return Err(Error::Plane(format!(
            "{} flags opposite ({p}, {l}), expected n^3 = {}",
            opposite.len(),
            n * n * n
        )));
    }
    let (orbit, sizes) = flag_orbits(plane, h);
    let flags = Flags::new(plane);
    let ids: HashSet<u32> = opposite.iter().map(|&(w, x)| orbit[flags.id(w, x)]).collect();
    let mut out: Vec<usize> = ids.into_iter().map(|i| sizes[i as usize]).collect();
    out.sort_unstable();
    Ok(out)
}

/// Recovers `(G, A, B, M)` from a plane of order `n` and a collineation
/// group with a flag-orbit of size `n³`, following the converse
/// construction: `A` and `B` stabilize the least flag `(Ā, B̄)` of such an
/// orbit, `𝔦̄` is the point of `B̄` outside `Ā^G`, `𝔍̄` the line on `Ā`
/// outside `B̄^G`, and `M` stabilizes both. The plane built from the triple
/// is mapped back by `Ā^x ↦ Ax`, `B̄^x ↦ Bx`, `𝔦̄^x ↦ BMx`, `𝔍̄^x ↦ AMx`.
pub fn extract_soft_triple(plane: &ProjectivePlane, h: &CollineationGroup) -> Result<ExtractionResult> {
    let n = plane.order();
    let n3 = n * n * n;
    let (orbit, sizes) = flag_orbits(plane, h);
    let flags = Flags::new(plane);
    let start = (0..flags.count())
        .find(|&f| sizes[orbit[f] as usize] == n3)
        .ok_or_else(|| {
            let mut s: Vec<usize> = sizes.clone();
            s.sort_unstable();
            s.dedup();
            Error::Extraction(format!("no flag orbit of size n^3 = {n3}; orbit sizes {s:?}"))
        })?;
    let (pa, lb) = flags.flag(start);
    let g = h.group();

    let r = point_orbit(h, pa);
    let s = line_orbit(h, lb);
    if r.len() != n * n || s.len() != n * n {
        return Err(Error::Extraction(format!(
            "orbits of sizes {} and {} on points and lines, expected n^2",
            r.len(),
            s.len()
        )));
    }
    let ip = unique(
        "point of the flag line outside the point orbit",
        plane.points_on(lb).iter().map(|&x| x as usize).filter(|x| !r.contains(x)),
    )?;
    let il = unique(
        "line on the flag point outside the line orbit",
        plane.lines_through(pa).iter().map(|&x| x as usize).filter(|x| !s.contains(x)),
    )?;
    let l_inf = unique(
        "line missing the point orbit",
        (0..plane.num_lines()).filter(|&l| plane.points_on(l).iter().all(|&x| !r.contains(&(x as usize)))),
    )?;
    let p_inf = unique(
        "point on no line of the line orbit",
        (0..plane.num_points())
            .filter(|&p| plane.lines_through(p).iter().all(|&x| !s.contains(&(x as usize)))),
    )?;
    if !plane.incident(p_inf, l_inf) || !h.fixes_flag(p_inf, l_inf) {
        return Err(Error::Extraction(format!(
            "({p_inf}, {l_inf}) is not a flag fixed by the group"
        )));
    }

    let stab = |keep: &dyn Fn(Elem) -> bool| Subgroup::from_elements(g, g.elements().filter(|&e| keep(e)));
    let a = stab(&|e| h.point_image(e, pa) == pa)?;
    let b = stab(&|e| h.line_image(e, lb) == lb)?;
    let m = stab(&|e| h.line_image(e, il) == il && h.point_image(e, ip) == ip)?;
    let triple = verify_soft_triple(g, &a, &b, &m).map_err(|e| match e {
        Error::NotSoft(r) => Error::Extraction(format!(
            "recovered subgroups fail the conditions, which the converse rules out:\n{r}"
        )),
        other => other,
    })?;
    let rebuilt = build_plane(&triple)?;

    let v = plane.num_points();
    let mut points = vec![usize::MAX; v];
    let mut lines = vec![usize::MAX; v];
    let set = |map: &mut Vec<usize>, from: usize, to: usize, what: &str| -> Result<()> {
        if map[from] != usize::MAX && map[from] != to {
            return Err(Error::Extraction(format!(
                "{what} {from} sent to both {} and {to}",
                map[from]
            )));
        }
        map[from] = to;
        Ok(())
    };
    set(&mut points, p_inf, 0, "point")?;
    set(&mut lines, l_inf, 0, "line")?;
    for x in g.elements() {
        set(&mut points, h.point_image(x, pa), rebuilt.a_point(x), "point")?;
        set(&mut points, h.point_image(x, ip), rebuilt.bm_point(x), "point")?;
        set(&mut lines, h.line_image(x, lb), rebuilt.b_line(x), "line")?;
        set(&mut lines, h.line_image(x, il), rebuilt.am_line(x), "line")?;
    }
    let isomorphism = Isomorphism { points, lines };
    if !isomorphism.verify(plane, rebuilt.plane()) {
        return Err(Error::Extraction("the coset map is not an isomorphism".into()));
    }
    Ok(ExtractionResult {
        triple,
        rebuilt,
        flag: (pa, lb),
        fixed_flag: (p_inf, l_inf),
        ideal_line: il,
        ideal_point: ip,
        isomorphism,
    })
}

/// Restricts the right action of a soft group to a Sylow `p`-subgroup and
/// extracts the soft triple it determines. Requires `n` a power of `p`.
pub fn sylow_reduction(t: &SoftTriple, p: u64) -> Result<ExtractionResult> {
    let n = t.n();
    match prime_power(n as u32) {
        Some((q, _)) if q as u64 == p => {}
        _ => return Err(Error::InvalidInput(format!("n = {n} is not a power of {p}"))),
    }
    let g = t.group();
    let sp = build_plane(t)?;
    let s = sylow_subgroup(g, p)?;
    let gens = s.generators().iter().map(|&x| sp.collineation(x)).collect();
    let h = CollineationGroup::generate(sp.plane().clone(), gens)?;
    let census = opposite_flag_census(sp.plane(), &h, (0, 0))?;
    if census != [n * n * n] {
        return Err(Error::Extraction(format!(
            "Sylow {p}-subgroup of order {} has opposite-flag orbits {census:?}",
            s.order()
        )));
    }
    extract_soft_triple(sp.plane(), &h)
}
