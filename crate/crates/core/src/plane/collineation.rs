use std::collections::HashMap;
use std::sync::Arc;

use super::ProjectivePlane;
use crate::group::{Elem, Group, GroupLaw};
use crate::limits;
use crate::{Error, Result};

/// Cap on stored point images across all elements of an enumerated group.
const MAX_STORED_IMAGES: usize = 64_000_000;

/// A pair of point and line permutations preserving incidence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Collineation {
    points: Box<[u16]>,
    lines: Box<[u16]>,
}

impl Collineation {
    pub fn identity(v: usize) -> Self {
        let id: Box<[u16]> = (0..v as u16).collect();
        Collineation {
            points: id.clone(),
            lines: id,
        }
    }

    /// Line images are derived from point images; the result is verified.
    pub fn from_point_map(plane: &ProjectivePlane, points: Vec<u16>) -> Result<Self> {
        let v = plane.num_points();
        if points.len() != v {
            return Err(Error::Action(format!("{} point images for {v} points", points.len())));
        }
        let mut seen = vec![false; v];
        for &p in &points {
            if p as usize >= v || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Action(format!("point map is not a permutation at {p}")));
            }
        }
        let lines: Box<[u16]> = (0..v)
            .map(|l| {
                let pts = plane.points_on(l);
                let (p, q) = (points[pts[0] as usize], points[pts[1] as usize]);
                plane.join(p as usize, q as usize) as u16
            })
            .collect();
        let c = Collineation {
            points: points.into_boxed_slice(),
            lines,
        };
        if let Some((p, l)) = c.incidence_violation(plane) {
            return Err(Error::Action(format!(
                "point {p} on line {l} is not mapped to an incident pair"
            )));
        }
        Ok(c)
    }

    /// Trusted constructor for maps already known to be collineations.
    pub(crate) fn from_parts(points: Box<[u16]>, lines: Box<[u16]>) -> Self {
        Collineation { points, lines }
    }

    #[inline]
    pub fn point(&self, p: usize) -> usize {
        self.points[p] as usize
    }

    #[inline]
    pub fn line(&self, l: usize) -> usize {
        self.lines[l] as usize
    }

    pub fn point_map(&self) -> &[u16] {
        &self.points
    }

    pub fn line_map(&self) -> &[u16] {
        &self.lines
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Collineation) -> Collineation {
        Collineation {
            points: self.points.iter().map(|&p| other.points[p as usize]).collect(),
            lines: self.lines.iter().map(|&l| other.lines[l as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Collineation {
        let mut points = vec![0u16; self.points.len()];
        let mut lines = vec![0u16; self.lines.len()];
        for (i, &p) in self.points.iter().enumerate() {
            points[p as usize] = i as u16;
        }
        for (i, &l) in self.lines.iter().enumerate() {
            lines[l as usize] = i as u16;
        }
        Collineation {
            points: points.into(),
            lines: lines.into(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.points.iter().enumerate().all(|(i, &p)| i == p as usize)
            && self.lines.iter().enumerate().all(|(i, &l)| i == l as usize)
    }

    /// First incident pair whose image is not incident.
    pub fn incidence_violation(&self, plane: &ProjectivePlane) -> Option<(usize, usize)> {
        (0..plane.num_lines()).find_map(|l| {
            let img = self.line(l);
            plane
                .points_on(l)
                .iter()
                .find(|&&p| !plane.incident(self.point(p as usize), img))
                .map(|&p| (p as usize, l))
        })
    }

    pub fn preserves_incidence(&self, plane: &ProjectivePlane) -> bool {
        self.incidence_violation(plane).is_none()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.point(p) == p).collect()
    }

    pub fn fixed_lines(&self) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.line(l) == l).collect()
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut c = self.clone();
        while !c.is_identity() {
            c = c.then(self);
            k += 1;
        }
        k
    }
}

/// Point images of an enumerated permutation group, with lookup by the
/// images of a base.
struct PermData {
    v: usize,
    images: Vec<u16>,
    base: Vec<u16>,
    lookup: HashMap<Box<[u16]>, Elem>,
    inverse: Vec<Elem>,
}

impl PermData {
    #[inline]
    fn image(&self, e: Elem, p: usize) -> u16 {
        self.images[e as usize * self.v + p]
    }

    fn row(&self, e: Elem) -> &[u16] {
        &self.images[e as usize * self.v..(e as usize + 1) * self.v]
    }
}

struct PermLaw(Arc<PermData>);

impl GroupLaw for PermLaw {
    fn order(&self) -> usize {
        self.0.images.len() / self.0.v
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = &self.0;
        let key: Box<[u16]> = d
            .base
            .iter()
            .map(|&p| d.image(b, d.image(a, p as usize) as usize))
            .collect();
        d.lookup[&key]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.0.inverse[a as usize]
    }
}

/// A collineation group given by generators and enumerated in full. Its
/// elements form a [`Group`] with id `0` the identity and product
/// "first, then second".
#[derive(Clone)]
pub struct CollineationGroup {
    plane: Arc<ProjectivePlane>,
    generators: Vec<Collineation>,
    data: Arc<PermData>,
    group: Group,
}

impl std::fmt::Debug for CollineationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CollineationGroup")
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl CollineationGroup {
    /// Verifies the generators and enumerates the group they generate.
    pub fn generate(plane: Arc<ProjectivePlane>, generators: Vec<Collineation>) -> Result<Self> {
        let v = plane.num_points();
        for (i, g) in generators.iter().enumerate() {
            if g.points.len() != v || g.lines.len() != v {
                return Err(Error::Action(format!("generator {i} has the wrong degree")));
            }
            if let Some((p, l)) = g.incidence_violation(&plane) {
                return Err(Error::Action(format!(
                    "generator {i} maps incident pair ({p}, {l}) to a non-incident pair"
                )));
            }
        }
        let mut images: Vec<u16> = (0..v as u16).collect();
        let mut seen: HashMap<Box<[u16]>, Elem> = HashMap::new();
        seen.insert(images.clone().into_boxed_slice(), 0);
        let mut count = 1usize;
        let mut next = 0usize;
        while next < count {
            for g in &generators {
                let row: Box<[u16]> = images[next * v..(next + 1) * v]
                    .iter()
                    .map(|&p| g.points[p as usize])
                    .collect();
                if !seen.contains_key(&row) {
                    limits::check_elements("collineation group", count + 1)?;
                    if (count + 1) * v > MAX_STORED_IMAGES {
                        return Err(Error::budget("collineation images", (count + 1) * v, MAX_STORED_IMAGES));
                    }
                    images.extend_from_slice(&row);
                    seen.insert(row, count as Elem);
                    count += 1;
                }
            }
            next += 1;
        }
        drop(seen);

        // Greedy base: add points while they split elements further.
        let mut class = vec![0u32; count];
        let mut classes = 1usize;
        let mut base = Vec::new();
        for p in 0..v {
            if classes == count {
                break;
            }
            let mut split: HashMap<(u32, u16), u32> = HashMap::new();
            let new: Vec<u32> = (0..count)
                .map(|e| {
                    let key = (class[e], images[e * v + p]);
                    let len = split.len() as u32;
                    *split.entry(key).or_insert(len)
                })
                .collect();
            if split.len() > classes {
                classes = split.len();
                class = new;
                base.push(p as u16);
            }
        }
        let mut data = PermData {
            v,
            images,
            base,
            lookup: HashMap::with_capacity(count),
            inverse: vec![0; count],
        };
        for e in 0..count as Elem {
            let key: Box<[u16]> = data.base.iter().map(|&p| data.image(e, p as usize)).collect();
            data.lookup.insert(key, e);
        }
        for e in 0..count as Elem {
            let row = data.row(e);
            let key: Box<[u16]> = data
                .base
                .iter()
                .map(|&b| row.iter().position(|&x| x == b).unwrap() as u16)
                .collect();
            data.inverse[e as usize] = data.lookup[&key];
        }
        let data = Arc::new(data);
        let group = Group::structured(Box::new(PermLaw(data.clone())), "collineations")?;
        Ok(CollineationGroup {
            plane,
            generators,
            data,
            group,
        })
    }

    pub fn plane(&self) -> &Arc<ProjectivePlane> {
        &self.plane
    }

    pub fn generators(&self) -> &[Collineation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The abstract group of enumerated elements.
    pub fn group(&self) -> &Group {
        &self.group
    }

    #[inline]
    pub fn point_image(&self, e: Elem, p: usize) -> usize {
        self.data.image(e, p) as usize
    }

    pub fn line_image(&self, e: Elem, l: usize) -> usize {
        let pts = self.plane.points_on(l);
        self.plane
            .join(self.point_image(e, pts[0] as usize), self.point_image(e, pts[1] as usize))
    }

    pub fn element(&self, e: Elem) -> Collineation {
        let points: Box<[u16]> = self.data.row(e).into();
        let lines = (0..self.plane.num_lines())
            .map(|l| self.line_image(e, l) as u16)
            .collect();
        Collineation::from_parts(points, lines)
    }

    /// Id of a collineation in this group, if it belongs to it.
    pub fn find(&self, c: &Collineation) -> Option<Elem> {
        let d = &self.data;
        let key: Box<[u16]> = d.base.iter().map(|&p| c.points[p as usize]).collect();
        d.lookup
            .get(&key)
            .copied()
            .filter(|&e| d.row(e) == &c.points[..])
    }

    pub fn fixes_flag(&self, p: usize, l: usize) -> bool {
        self.generators.iter().all(|g| g.point(p) == p && g.line(l) == l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::build_desarguesian;

    #[test]
    fn inverse_and_compose() {
        let plane = build_desarguesian(3).unwrap();
        let v = plane.num_points();
        // any nontrivial collineation of the built-in translation type
        let c = crate::plane::desarguesian::linear_collineation(3, &[1, 1, 0, 0, 1, 0, 0, 0, 1])
            .unwrap();
        assert!(c.preserves_incidence(&plane));
        assert!(c.then(&c.inverse()).is_identity());
        assert_eq!(c.order(), 3);
        assert!(Collineation::identity(v).is_identity());
    }

    #[test]
    fn enumerates_cyclic_group() {
        let plane = Arc::new(build_desarguesian(3).unwrap());
        let c = crate::plane::desarguesian::linear_collineation(3, &[1, 1, 0, 0, 1, 0, 0, 0, 1])
            .unwrap();
        let g = CollineationGroup::generate(plane, vec![c.clone()]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.find(&c), Some(1));
        let grp = g.group();
        assert_eq!(grp.mul(1, 1), 2);
        assert_eq!(grp.inv(1), 2);
    }
}
