use std::collections::HashSet;
use std::sync::Arc;

use super::{Collineation, CollineationGroup, ProjectivePlane};
use crate::group::{coset_system, CosetSystem, Elem, Side};
use crate::soft::SoftTriple;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Infinity,
    /// Coset `Ax`, by least element.
    A(Elem),
    /// Coset `BMx`, by least element.
    Bm(Elem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind {
    Infinity,
    /// Coset `By`, by least element.
    B(Elem),
    /// Coset `AMy`, by least element.
    Am(Elem),
}

/// The coset plane of a soft triple.
///
/// Points: `0 = ∞`, then the `n²` right cosets of `A`, then the `n` right
/// cosets of `BM`. Lines: `0 = L∞`, then the `n²` right cosets of `B`, then
/// the `n` right cosets of `AM`. Each block is ordered by least element, so
/// point `1` is `A`, point `1 + n²` is `BM` (the ideal point), line `1` is
/// `B` and line `1 + n²` is `AM` (the ideal line).
#[derive(Clone, Debug)]
pub struct SoftPlane {
    triple: SoftTriple,
    plane: Arc<ProjectivePlane>,
    a: CosetSystem,
    bm: CosetSystem,
    b: CosetSystem,
    am: CosetSystem,
}

fn dedup_sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Builds the plane in which a point coset lies on a line coset exactly
/// when they meet; `∞` lies on `L∞` and the `AM`-lines, `L∞` carries the
/// `BM`-points.
pub fn build_plane(t: &SoftTriple) -> Result<SoftPlane> {
    let g = t.group();
    let n = t.n();
    let a = coset_system(t.a(), Side::Right)?;
    let bm = coset_system(t.bm(), Side::Right)?;
    let b = coset_system(t.b(), Side::Right)?;
    let am = coset_system(t.am(), Side::Right)?;
    let nn = n * n;
    if a.len() != nn || b.len() != nn || bm.len() != n || am.len() != n {
        return Err(Error::Plane("coset counts do not match the plane order".into()));
    }
    let b_elems = t.b().to_vec();
    let am_elems = t.am().to_vec();
    let mut lines = Vec::with_capacity(nn + n + 1);
    lines.push(std::iter::once(0).chain((0..n).map(|j| 1 + nn + j)).collect());
    for &y in b.reps() {
        let mut pts = dedup_sorted(b_elems.iter().map(|&x| 1 + a.index_of(g.mul(x, y))).collect());
        pts.push(1 + nn + bm.index_of(y));
        lines.push(pts);
    }
    for &y in am.reps() {
        let mut pts = vec![0];
        pts.extend(dedup_sorted(am_elems.iter().map(|&x| 1 + a.index_of(g.mul(x, y))).collect()));
        lines.push(pts);
    }
    let plane = ProjectivePlane::from_lines(lines, true)?;
    Ok(SoftPlane {
        triple: t.clone(),
        plane: Arc::new(plane),
        a,
        bm,
        b,
        am,
    })
}

impl SoftPlane {
    pub fn triple(&self) -> &SoftTriple {
        &self.triple
    }

    pub fn plane(&self) -> &Arc<ProjectivePlane> {
        &self.plane
    }

    pub fn order(&self) -> usize {
        self.triple.n()
    }

    /// Point `A`.
    pub fn base_point(&self) -> usize {
        1
    }

    /// Line `B`.
    pub fn base_line(&self) -> usize {
        1
    }

    /// Point `BM`, the point of `B` on `L∞`.
    pub fn ideal_point(&self) -> usize {
        1 + self.order() * self.order()
    }

    /// Line `AM`, the line joining `A` and `∞`.
    pub fn ideal_line(&self) -> usize {
        1 + self.order() * self.order()
    }

    pub fn point_kind(&self, p: usize) -> PointKind {
        let nn = self.order() * self.order();
        match p {
            0 => PointKind::Infinity,
            p if p <= nn => PointKind::A(self.a.reps()[p - 1]),
            p => PointKind::Bm(self.bm.reps()[p - 1 - nn]),
        }
    }

    pub fn line_kind(&self, l: usize) -> LineKind {
        let nn = self.order() * self.order();
        match l {
            0 => LineKind::Infinity,
            l if l <= nn => LineKind::B(self.b.reps()[l - 1]),
            l => LineKind::Am(self.am.reps()[l - 1 - nn]),
        }
    }

    /// Point `Ax`.
    pub fn a_point(&self, x: Elem) -> usize {
        1 + self.a.index_of(x)
    }

    /// Point `BMx`.
    pub fn bm_point(&self, x: Elem) -> usize {
        1 + self.order() * self.order() + self.bm.index_of(x)
    }

    /// Line `By`.
    pub fn b_line(&self, y: Elem) -> usize {
        1 + self.b.index_of(y)
    }

    /// Line `AMy`.
    pub fn am_line(&self, y: Elem) -> usize {
        1 + self.order() * self.order() + self.am.index_of(y)
    }

    /// Right multiplication by `g`.
    pub fn collineation(&self, g: Elem) -> Collineation {
        let grp = self.triple.group();
        let v = self.plane.num_points();
        let points = (0..v)
            .map(|p| match self.point_kind(p) {
                PointKind::Infinity => 0,
                PointKind::A(x) => self.a_point(grp.mul(x, g)) as u16,
                PointKind::Bm(x) => self.bm_point(grp.mul(x, g)) as u16,
            })
            .collect();
        let lines = (0..v)
            .map(|l| match self.line_kind(l) {
                LineKind::Infinity => 0,
                LineKind::B(y) => self.b_line(grp.mul(y, g)) as u16,
                LineKind::Am(y) => self.am_line(grp.mul(y, g)) as u16,
            })
            .collect();
        Collineation::from_parts(points, lines)
    }

    /// Realizes `G` on the plane by right multiplication and checks that the
    /// action is by collineations, faithful, and regular on opposite flags
    /// modulo `A ∩ B`.
    pub fn right_action(&self) -> Result<RightAction> {
        let grp = self.triple.group();
        let generators: Vec<Collineation> =
            grp.generators().iter().map(|&g| self.collineation(g)).collect();
        for (i, c) in generators.iter().enumerate() {
            if let Some((p, l)) = c.incidence_violation(&self.plane) {
                return Err(Error::Action(format!(
                    "generator {} breaks incidence of ({p}, {l})",
                    grp.generators()[i]
                )));
            }
        }
        // The kernel is normal and fixes the point A, so it lies in A.
        if let Some(a) = self
            .triple
            .a()
            .elements()
            .find(|&a| a != 0 && self.collineation(a).is_identity())
        {
            return Err(Error::Action(format!("element {a} acts trivially")));
        }
        let flag = (self.base_point() as u16, self.base_line() as u16);
        let mut seen = HashSet::from([flag]);
        let mut queue = vec![flag];
        while let Some((p, l)) = queue.pop() {
            for c in &generators {
                let img = (c.point(p as usize) as u16, c.line(l as usize) as u16);
                if seen.insert(img) {
                    queue.push(img);
                }
            }
        }
        let n = self.order();
        if seen.len() != n * n * n {
            return Err(Error::Action(format!(
                "flag orbit has size {}, expected {}",
                seen.len(),
                n * n * n
            )));
        }
        Ok(RightAction {
            plane: self.plane.clone(),
            group_generators: grp.generators().to_vec(),
            generators,
            flag_orbit: seen.len(),
        })
    }
}

/// The verified right-multiplication action of a soft group.
#[derive(Clone, Debug)]
pub struct RightAction {
    plane: Arc<ProjectivePlane>,
    group_generators: Vec<Elem>,
    generators: Vec<Collineation>,
    flag_orbit: usize,
}

impl RightAction {
    /// Collineations induced by the group's generators, in order.
    pub fn generators(&self) -> &[Collineation] {
        &self.generators
    }

    pub fn group_generators(&self) -> &[Elem] {
        &self.group_generators
    }

    pub fn flag_orbit(&self) -> usize {
        self.flag_orbit
    }

    /// The image group, enumerated independently of the soft group.
    pub fn collineation_group(&self) -> Result<CollineationGroup> {
        CollineationGroup::generate(self.plane.clone(), self.generators.clone())
    }
}
