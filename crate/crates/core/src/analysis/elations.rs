use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::group::{Elem, Group, Subgroup};
use crate::plane::{Collineation, CollineationGroup, ProjectivePlane, SoftPlane};
use crate::{Error, Result};

/// Largest plane order accepted by [`full_axial_elations`].
pub const AXIAL_MAX_ORDER: usize = 32;

/// Fixed structure of a collineation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perspectivity {
    Identity,
    Elation { center: usize, axis: usize },
    Homology { center: usize, axis: usize },
    /// Fixes no line pointwise.
    Other,
}

impl Perspectivity {
    pub fn center_axis(&self) -> Option<(usize, usize)> {
        match *self {
            Perspectivity::Elation { center, axis } | Perspectivity::Homology { center, axis } => {
                Some((center, axis))
            }
            _ => None,
        }
    }

    pub fn is_elation(&self) -> bool {
        matches!(self, Perspectivity::Elation { .. })
    }
}

/// Classifies `c`: an axis is a line fixed pointwise, a center a point
/// fixed linewise. A nonidentity collineation has at most one of each, and
/// has an axis iff it has a center.
pub fn classify(plane: &ProjectivePlane, c: &Collineation) -> Result<Perspectivity> {
    let v = plane.num_points();
    let mut fixed = FixedBitSet::with_capacity(v);
    for p in 0..v {
        if c.point(p) == p {
            fixed.insert(p);
        }
    }
    if fixed.count_ones(..) == v {
        return Ok(Perspectivity::Identity);
    }
    let axis = (0..v).find(|&l| c.line(l) == l && plane.line_set(l).is_subset(&fixed));
    let center = (0..v).find(|&p| {
        fixed.contains(p) && plane.lines_through(p).iter().all(|&l| c.line(l as usize) == l as usize)
    });
    match (center, axis) {
        (None, None) => Ok(Perspectivity::Other),
        (Some(center), Some(axis)) => Ok(if plane.incident(center, axis) {
            Perspectivity::Elation { center, axis }
        } else {
            Perspectivity::Homology { center, axis }
        }),
        _ => Err(Error::Action("collineation with an axis but no center".into())),
    }
}

/// Perspectivity type of every element of a soft group acting on its plane.
#[derive(Clone, Debug)]
pub struct ElationCensus {
    plane: Arc<ProjectivePlane>,
    group: Group,
    n: usize,
    kinds: Vec<Perspectivity>,
}

impl ElationCensus {
    pub fn new(sp: &SoftPlane) -> Result<Self> {
        let group = sp.triple().group().clone();
        let plane = sp.plane().clone();
        let kinds = (0..group.order() as Elem)
            .into_par_iter()
            .map(|g| classify(&plane, &sp.collineation(g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElationCensus {
            plane,
            group,
            n: sp.order(),
            kinds,
        })
    }

    pub fn kind(&self, g: Elem) -> Perspectivity {
        self.kinds[g as usize]
    }

    pub fn plane(&self) -> &Arc<ProjectivePlane> {
        &self.plane
    }

    fn collect(&self, keep: impl Fn(&Perspectivity) -> bool) -> Result<Subgroup> {
        let elems = self
            .kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == Perspectivity::Identity || keep(k))
            .map(|(g, _)| g as Elem);
        Subgroup::from_elements(&self.group, elems)
    }

    /// `Γ(w, W)`: elements fixing every point of `W` and every line on `w`.
    pub fn gamma(&self, w: usize, axis: usize) -> Result<Subgroup> {
        self.collect(|k| k.center_axis() == Some((w, axis)))
    }

    /// Elations with axis `W`.
    pub fn gamma_axis(&self, axis: usize) -> Result<Subgroup> {
        self.collect(|k| matches!(*k, Perspectivity::Elation { axis: a, .. } if a == axis))
    }

    /// Elations with center `w`.
    pub fn gamma_center(&self, w: usize) -> Result<Subgroup> {
        self.collect(|k| matches!(*k, Perspectivity::Elation { center: c, .. } if c == w))
    }

    /// `Γ(L∞)`.
    pub fn translations(&self) -> Result<Subgroup> {
        self.gamma_axis(0)
    }

    /// `Γ(∞)`.
    pub fn central(&self) -> Result<Subgroup> {
        self.gamma_center(0)
    }

    /// Nonidentity elations.
    pub fn elations(&self) -> Vec<Elem> {
        self.select(Perspectivity::is_elation)
    }

    pub fn homologies(&self) -> Vec<Elem> {
        self.select(|k| matches!(k, Perspectivity::Homology { .. }))
    }

    fn select(&self, keep: impl Fn(&Perspectivity) -> bool) -> Vec<Elem> {
        (0..self.kinds.len())
            .filter(|&g| keep(&self.kinds[g]))
            .map(|g| g as Elem)
            .collect()
    }

    /// The elements of `h` that are elations.
    pub fn elations_in(&self, h: &Subgroup) -> Vec<Elem> {
        h.elements().filter(|&g| self.kinds[g as usize].is_elation()).collect()
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// `Γ(w, W) ∩ G` for the right action of a soft group.
pub fn elations_in_group(sp: &SoftPlane, w: usize, axis: usize) -> Result<Subgroup> {
    ElationCensus::new(sp)?.gamma(w, axis)
}

/// The full group of elations of a plane with a given axis.
#[derive(Clone, Debug)]
pub struct AxialElations {
    pub axis: usize,
    /// All elations with this axis, identity first.
    pub elements: Vec<Collineation>,
    /// `(center, number of nonidentity elations with that center)`.
    pub by_center: Vec<(usize, usize)>,
}

impl AxialElations {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Transitive on the `n²` points off the axis; for `W = L∞` this makes
    /// the plane a translation plane.
    pub fn is_transitive(&self, n: usize) -> bool {
        self.order() == n * n
    }

    pub fn contains(&self, c: &Collineation) -> bool {
        self.elements.iter().any(|e| e == c)
    }

    pub fn point_maps(&self) -> HashSet<&[u16]> {
        self.elements.iter().map(|e| e.point_map()).collect()
    }
}

/// Candidate elation with axis `axis` and center `c` sending `p` to `p2`.
fn synthesize(
    plane: &ProjectivePlane,
    axis: usize,
    c: usize,
    p: usize,
    p2: usize,
    q: usize,
) -> Option<Collineation> {
    let v = plane.num_points();
    let cp = plane.join(c, p);
    let image = |x: usize, src: usize, dst: usize| {
        let y = plane.meet(plane.join(src, x), axis);
        plane.meet(plane.join(c, x), plane.join(dst, y))
    };
    let q2 = image(q, p, p2);
    let map: Vec<u16> = (0..v)
        .map(|x| {
            if plane.incident(x, axis) {
                x
            } else if x == p {
                p2
            } else if plane.incident(x, cp) {
                image(x, q, q2)
            } else {
                image(x, p, p2)
            }
        } as u16)
        .collect();
    Collineation::from_point_map(plane, map).ok()
}

/// All elations of `plane` with axis `axis`, found by synthesizing for each
/// center `c` on the axis the unique candidate sending a fixed point `p` to
/// each other point `p′` of `cp` and keeping those that are collineations.
/// The result is checked to be closed under composition.
pub fn full_axial_elations(plane: &ProjectivePlane, axis: usize) -> Result<AxialElations> {
    let n = plane.order();
    if n > AXIAL_MAX_ORDER {
        return Err(Error::budget("axial elation synthesis plane order", n, AXIAL_MAX_ORDER));
    }
    let v = plane.num_points();
    let p = (0..v).find(|&x| !plane.incident(x, axis)).unwrap();
    let centers: Vec<usize> = plane.points_on(axis).iter().map(|&c| c as usize).collect();
    let per_center: Vec<(usize, Vec<Collineation>)> = centers
        .par_iter()
        .map(|&c| {
            let cp = plane.join(c, p);
            let q = (0..v)
                .find(|&x| !plane.incident(x, axis) && !plane.incident(x, cp))
                .unwrap();
            let found: Vec<Collineation> = plane
                .points_on(cp)
                .iter()
                .map(|&x| x as usize)
                .filter(|&p2| p2 != p && !plane.incident(p2, axis))
                .filter_map(|p2| synthesize(plane, axis, c, p, p2, q))
                .collect();
            (c, found)
        })
        .collect();
    let mut elements = vec![Collineation::identity(v)];
    let mut by_center = Vec::new();
    for (c, found) in per_center {
        for e in &found {
            match classify(plane, e)? {
                Perspectivity::Elation { center, axis: a } if center == c && a == axis => {}
                other => {
                    return Err(Error::Action(format!(
                        "synthesized map for center {c} is {other:?}, not an elation"
                    )))
                }
            }
        }
        by_center.push((c, found.len()));
        elements.extend(found);
    }
    let set: HashSet<&[u16]> = elements.iter().map(|e| e.point_map()).collect();
    let gens: Vec<Collineation> = elements.iter().skip(1).cloned().collect();
    if !gens.is_empty() {
        let closure = CollineationGroup::generate(Arc::new(plane.clone()), gens)?;
        if closure.order() != set.len() {
            return Err(Error::Action(format!(
                "elations with axis {axis} generate {} collineations, found {}",
                closure.order(),
                set.len()
            )));
        }
    }
    Ok(AxialElations {
        axis,
        elements,
        by_center,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::build_desarguesian;

    #[test]
    fn pg24_is_translation_plane() {
        let p = build_desarguesian(4).unwrap();
        let e = full_axial_elations(&p, 0).unwrap();
        assert_eq!(e.order(), 16);
        assert!(e.is_transitive(4));
        assert!(e.by_center.iter().all(|&(_, k)| k == 3));
    }

    #[test]
    fn every_line_is_a_translation_axis_in_pg23() {
        let p = build_desarguesian(3).unwrap();
        for l in 0..p.num_lines() {
            assert_eq!(full_axial_elations(&p, l).unwrap().order(), 9);
        }
    }

    #[test]
    fn identity_classified() {
        let p = build_desarguesian(2).unwrap();
        assert_eq!(classify(&p, &Collineation::identity(7)).unwrap(), Perspectivity::Identity);
    }
}
