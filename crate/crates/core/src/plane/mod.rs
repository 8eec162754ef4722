//! Projective planes as incidence structures.
//!
//! Points and lines are indexed `0..n²+n+1`. A plane may carry a
//! distinguished flag, in which case point `0` is `∞` and line `0` is `L∞`.

mod collineation;
mod desarguesian;
mod iso;
mod ptr;
mod soft_plane;

pub use collineation::{Collineation, CollineationGroup};
pub use desarguesian::{build_desarguesian, linear_collineation};
pub use iso::{planes_isomorphic, Isomorphism, DEFAULT_NODE_BUDGET};
pub use ptr::{coordinatize_ptr, default_quadrilateral, PtrClass, TernaryRing};
pub use soft_plane::{build_plane, LineKind, PointKind, RightAction, SoftPlane};

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// Largest number of points for which join/meet tables are precomputed.
const TABLE_MAX_POINTS: usize = 1200;

/// Largest supported number of points (indices are stored as `u16`).
pub const MAX_POINTS: usize = u16::MAX as usize;

#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    n: usize,
    lines: Vec<Vec<u16>>,
    pencils: Vec<Vec<u16>>,
    line_sets: Vec<FixedBitSet>,
    flag: bool,
    join: Option<Vec<u16>>,
    meet: Option<Vec<u16>>,
}

/// `n` with `n² + n + 1 = v`.
fn order_from_size(v: usize) -> Option<usize> {
    let mut n = 0;
    while n * n + n + 1 < v {
        n += 1;
    }
    (n * n + n + 1 == v).then_some(n)
}

/// Checks the projective plane axioms on an arbitrary incidence structure
/// given as point lists of lines. Returns the order.
pub fn verify_plane_axioms(num_points: usize, lines: &[Vec<usize>]) -> Result<usize> {
    let v = num_points;
    let n = order_from_size(v)
        .filter(|&n| n >= 2)
        .ok_or_else(|| Error::Plane(format!("{v} points is not n^2+n+1 for any n >= 2")))?;
    if lines.len() != v {
        return Err(Error::Plane(format!("{} lines but {v} points", lines.len())));
    }
    if v > MAX_POINTS {
        return Err(Error::budget("plane points", v, MAX_POINTS));
    }
    let mut pencils = vec![Vec::new(); v];
    for (l, pts) in lines.iter().enumerate() {
        if pts.len() != n + 1 {
            return Err(Error::Plane(format!("line {l} has {} points, expected {}", pts.len(), n + 1)));
        }
        for &p in pts {
            if p >= v {
                return Err(Error::Plane(format!("line {l} lists point {p} out of range")));
            }
            if pencils[p].last() == Some(&l) {
                return Err(Error::Plane(format!("line {l} lists point {p} twice")));
            }
            pencils[p].push(l);
        }
    }
    if let Some(p) = (0..v).find(|&p| pencils[p].len() != n + 1) {
        return Err(Error::Plane(format!(
            "point {p} is on {} lines, expected {}",
            pencils[p].len(),
            n + 1
        )));
    }
    let mut count = vec![0u32; v];
    for p in 0..v {
        count.iter_mut().for_each(|c| *c = 0);
        for &l in &pencils[p] {
            for &q in &lines[l] {
                count[q] += 1;
            }
        }
        if let Some(q) = (0..v).find(|&q| q != p && count[q] != 1) {
            return Err(Error::Plane(format!(
                "points {p} and {q} lie on {} common lines",
                count[q]
            )));
        }
    }
    for l in 0..v {
        count.iter_mut().for_each(|c| *c = 0);
        for &p in &lines[l] {
            for &m in &pencils[p] {
                count[m] += 1;
            }
        }
        if let Some(m) = (0..v).find(|&m| m != l && count[m] != 1) {
            return Err(Error::Plane(format!("lines {l} and {m} meet in {} points", count[m])));
        }
    }
    // A quadrilateral: two points, a third off their line, a fourth off all
    // three joins.
    let on = |l: usize, p: usize| lines[l].contains(&p);
    let join = |p: usize, q: usize| {
        pencils[p]
            .iter()
            .copied()
            .find(|&l| on(l, q))
            .expect("pair axiom checked")
    };
    let l01 = join(0, 1);
    let p2 = (0..v).find(|&p| !on(l01, p));
    let quad = p2.and_then(|p2| {
        let (l02, l12) = (join(0, p2), join(1, p2));
        (0..v).find(|&p| !on(l01, p) && !on(l02, p) && !on(l12, p))
    });
    if quad.is_none() {
        return Err(Error::Plane("no four points in general position".into()));
    }
    Ok(n)
}

impl ProjectivePlane {
    /// Builds a plane from point lists of lines, verifying the axioms. With
    /// `flag`, point 0 must lie on line 0.
    pub fn from_lines(lines: Vec<Vec<usize>>, flag: bool) -> Result<Self> {
        let v = lines.len();
        let n = verify_plane_axioms(v, &lines)?;
        if flag && !lines[0].contains(&0) {
            return Err(Error::Plane("point 0 is not on line 0".into()));
        }
        let mut sorted: Vec<Vec<u16>> = lines
            .iter()
            .map(|l| l.iter().map(|&p| p as u16).collect())
            .collect();
        sorted.iter_mut().for_each(|l| l.sort_unstable());
        let mut pencils = vec![Vec::with_capacity(n + 1); v];
        let mut line_sets = Vec::with_capacity(v);
        for (l, pts) in sorted.iter().enumerate() {
            let mut s = FixedBitSet::with_capacity(v);
            for &p in pts {
                pencils[p as usize].push(l as u16);
                s.insert(p as usize);
            }
            line_sets.push(s);
        }
        let mut plane = ProjectivePlane {
            n,
            lines: sorted,
            pencils,
            line_sets,
            flag,
            join: None,
            meet: None,
        };
        if v <= TABLE_MAX_POINTS {
            let mut join = vec![u16::MAX; v * v];
            let mut meet = vec![u16::MAX; v * v];
            for l in 0..v {
                for &p in &plane.lines[l] {
                    for &q in &plane.lines[l] {
                        join[p as usize * v + q as usize] = l as u16;
                    }
                }
            }
            for p in 0..v {
                for &l in &plane.pencils[p] {
                    for &m in &plane.pencils[p] {
                        meet[l as usize * v + m as usize] = p as u16;
                    }
                }
            }
            plane.join = Some(join);
            plane.meet = Some(meet);
        }
        Ok(plane)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `n² + n + 1`.
    pub fn num_points(&self) -> usize {
        self.lines.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn has_flag(&self) -> bool {
        self.flag
    }

    /// Marks point 0 / line 0 as the distinguished flag.
    pub fn with_flag(mut self) -> Result<Self> {
        if !self.incident(0, 0) {
            return Err(Error::Plane("point 0 is not on line 0".into()));
        }
        self.flag = true;
        Ok(self)
    }

    /// Sorted points of line `l`.
    pub fn points_on(&self, l: usize) -> &[u16] {
        &self.lines[l]
    }

    /// Sorted lines through point `p`.
    pub fn lines_through(&self, p: usize) -> &[u16] {
        &self.pencils[p]
    }

    pub fn line_set(&self, l: usize) -> &FixedBitSet {
        &self.line_sets[l]
    }

    #[inline]
    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.line_sets[l].contains(p)
    }

    /// The line through two distinct points.
    #[inline]
    pub fn join(&self, p: usize, q: usize) -> usize {
        debug_assert_ne!(p, q);
        match &self.join {
            Some(t) => t[p * self.num_points() + q] as usize,
            None => self.pencils[p]
                .iter()
                .map(|&l| l as usize)
                .find(|&l| self.incident(q, l))
                .expect("two points span a line"),
        }
    }

    /// The point on two distinct lines.
    #[inline]
    pub fn meet(&self, l: usize, m: usize) -> usize {
        debug_assert_ne!(l, m);
        match &self.meet {
            Some(t) => t[l * self.num_points() + m] as usize,
            None => self.lines[l]
                .iter()
                .map(|&p| p as usize)
                .find(|&p| self.incident(p, m))
                .expect("two lines meet"),
        }
    }

    pub fn collinear(&self, p: usize, q: usize, r: usize) -> bool {
        if p == q || q == r || p == r {
            return true;
        }
        self.incident(r, self.join(p, q))
    }

    /// Point lists of all lines.
    pub fn lines(&self) -> Vec<Vec<usize>> {
        self.lines
            .iter()
            .map(|l| l.iter().map(|&p| p as usize).collect())
            .collect()
    }

    /// 0/1 matrix, one row per line.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.num_lines())
            .map(|l| (0..self.num_points()).map(|p| self.incident(p, l) as u8).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ]
    }

    #[test]
    fn fano_has_order_two() {
        assert_eq!(verify_plane_axioms(7, &fano()).unwrap(), 2);
        let p = ProjectivePlane::from_lines(fano(), true).unwrap();
        assert_eq!(p.join(3, 5), 3);
        assert_eq!(p.meet(0, 3), 1);
    }

    #[test]
    fn flipped_bit_reports_pair() {
        let mut lines = fano();
        lines[6] = vec![2, 4, 6];
        let err = verify_plane_axioms(7, &lines).unwrap_err().to_string();
        assert!(err.contains("common lines") || err.contains("lines, expected"), "{err}");
    }

    #[test]
    fn wrong_size_rejected() {
        assert!(verify_plane_axioms(8, &vec![vec![0, 1, 2]; 8]).is_err());
    }
}
