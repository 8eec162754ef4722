use super::ProjectivePlane;
use crate::{Error, Result};

/// Default cap on search nodes for [`planes_isomorphic`].
pub const DEFAULT_NODE_BUDGET: usize = 5_000_000;

/// Largest order searched without pinned flags.
const FREE_MAX_ORDER: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
}

impl Isomorphism {
    /// Whether the maps are bijections carrying incidence exactly.
    pub fn verify(&self, from: &ProjectivePlane, to: &ProjectivePlane) -> bool {
        let v = from.num_points();
        if to.num_points() != v || self.points.len() != v || self.lines.len() != v {
            return false;
        }
        let mut seen = vec![false; v];
        if self.points.iter().any(|&p| std::mem::replace(&mut seen[p], true)) {
            return false;
        }
        (0..v).all(|l| {
            from.points_on(l)
                .iter()
                .all(|&p| to.incident(self.points[p as usize], self.lines[l]))
        })
    }
}

struct Search<'a> {
    a: &'a ProjectivePlane,
    b: &'a ProjectivePlane,
    pmap: Vec<usize>,
    pinv: Vec<usize>,
    lmap: Vec<usize>,
    linv: Vec<usize>,
    trail: Vec<(bool, usize)>,
    nodes: usize,
    budget: usize,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    fn set_point(&mut self, p: usize, q: usize) -> bool {
        if self.pmap[p] == q {
            return true;
        }
        if self.pmap[p] != NONE || self.pinv[q] != NONE {
            return false;
        }
        self.pmap[p] = q;
        self.pinv[q] = p;
        self.trail.push((true, p));
        true
    }

    fn set_line(&mut self, l: usize, m: usize) -> bool {
        if self.lmap[l] == m {
            return true;
        }
        if self.lmap[l] != NONE || self.linv[m] != NONE {
            return false;
        }
        self.lmap[l] = m;
        self.linv[m] = l;
        self.trail.push((false, l));
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (is_point, x) = self.trail.pop().unwrap();
            if is_point {
                let y = std::mem::replace(&mut self.pmap[x], NONE);
                self.pinv[y] = NONE;
            } else {
                let y = std::mem::replace(&mut self.lmap[x], NONE);
                self.linv[y] = NONE;
            }
        }
    }

    /// Closes the partial map under joins and meets; false on conflict.
    fn propagate(&mut self, from: usize) -> bool {
        let mut i = from;
        while i < self.trail.len() {
            let (is_point, x) = self.trail[i];
            i += 1;
            if is_point {
                let p = x;
                let q = self.pmap[p];
                // joins with every other mapped point
                for &l in self.a.lines_through(p) {
                    let l = l as usize;
                    if self.lmap[l] != NONE {
                        if !self.b.incident(q, self.lmap[l]) {
                            return false;
                        }
                        continue;
                    }
                    let other = self
                        .a
                        .points_on(l)
                        .iter()
                        .map(|&r| r as usize)
                        .find(|&r| r != p && self.pmap[r] != NONE);
                    if let Some(r) = other {
                        let m = self.b.join(q, self.pmap[r]);
                        if !self.set_line(l, m) {
                            return false;
                        }
                    }
                }
            } else {
                let l = x;
                let m = self.lmap[l];
                for &p in self.a.points_on(l) {
                    let p = p as usize;
                    if self.pmap[p] != NONE {
                        if !self.b.incident(self.pmap[p], m) {
                            return false;
                        }
                        continue;
                    }
                    let other = self
                        .a
                        .lines_through(p)
                        .iter()
                        .map(|&k| k as usize)
                        .find(|&k| k != l && self.lmap[k] != NONE);
                    if let Some(k) = other {
                        let r = self.b.meet(m, self.lmap[k]);
                        if !self.set_point(p, r) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::budget("isomorphism search nodes", self.nodes, self.budget));
        }
        let Some(p) = self.pmap.iter().position(|&x| x == NONE) else {
            return Ok(true);
        };
        let v = self.a.num_points();
        for q in 0..v {
            if self.pinv[q] != NONE {
                continue;
            }
            let mark = self.trail.len();
            if self.set_point(p, q) && self.propagate(mark) && self.solve()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Backtracking search for an isomorphism `a → b`. With `pin_flags` the
/// distinguished flags of both planes are mapped onto each other; without
/// it the order is capped at 9.
pub fn planes_isomorphic(
    a: &ProjectivePlane,
    b: &ProjectivePlane,
    pin_flags: bool,
    node_budget: usize,
) -> Result<Option<Isomorphism>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if !pin_flags && a.order() > FREE_MAX_ORDER {
        return Err(Error::InvalidInput(format!(
            "unpinned isomorphism search is limited to order {FREE_MAX_ORDER}"
        )));
    }
    if pin_flags && !(a.has_flag() && b.has_flag()) {
        return Err(Error::InvalidInput("both planes need a distinguished flag to pin".into()));
    }
    let v = a.num_points();
    let mut s = Search {
        a,
        b,
        pmap: vec![NONE; v],
        pinv: vec![NONE; v],
        lmap: vec![NONE; v],
        linv: vec![NONE; v],
        trail: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    if pin_flags {
        s.set_point(0, 0);
        s.set_line(0, 0);
        if !s.propagate(0) {
            return Ok(None);
        }
    }
    if !s.solve()? {
        return Ok(None);
    }
    let iso = Isomorphism {
        points: s.pmap,
        lines: s.lmap,
    };
    debug_assert!(iso.verify(a, b));
    Ok(Some(iso))
}
