use std::collections::HashSet;

use rayon::prelude::*;

use crate::group::{Elem, Subgroup};
use crate::plane::{Collineation, SoftPlane};
use crate::soft::Clause;
use crate::Result;

fn orbit_size(gens: &[Collineation], start: usize, on_points: bool) -> usize {
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for c in gens {
            let y = if on_points { c.point(x) } else { c.line(x) };
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

/// Checks on the ideal line `𝔍` (through `A` and `∞`) and the ideal point
/// `𝔦` (on `B` and `L∞`), computed from the action on the plane:
/// their incidences, their stabilizers `AM`, `BM` and `M`, and the
/// transitivity of `BM` on affine points and of `AM` on lines off `∞`.
pub fn ideal_checks(sp: &SoftPlane) -> Result<Vec<Clause>> {
    let t = sp.triple();
    let g = t.group();
    let plane = sp.plane();
    let (il, ip) = (sp.ideal_line(), sp.ideal_point());
    let mut out = Vec::new();

    let mut expect: Vec<usize> = t.m().elements().map(|m| sp.a_point(m)).collect();
    expect.push(0);
    expect.sort_unstable();
    expect.dedup();
    let got: Vec<usize> = plane.points_on(il).iter().map(|&p| p as usize).collect();
    out.push(Clause::new(
        "ideal line is {Am} plus infinity",
        got == expect,
        format!("line {il} has points {got:?}"),
    ));
    let mut expect: Vec<usize> = t.m().elements().map(|m| sp.b_line(m)).collect();
    expect.push(0);
    expect.sort_unstable();
    expect.dedup();
    let got: Vec<usize> = plane.lines_through(ip).iter().map(|&l| l as usize).collect();
    out.push(Clause::new(
        "ideal point is on {Bm} and L-infinity",
        got == expect,
        format!("point {ip} is on lines {got:?}"),
    ));

    let fixes: Vec<(bool, bool)> = (0..g.order() as Elem)
        .into_par_iter()
        .map(|x| {
            let c = sp.collineation(x);
            (c.line(il) == il, c.point(ip) == ip)
        })
        .collect();
    let stab = |f: &dyn Fn(&(bool, bool)) -> bool| {
        Subgroup::from_elements(g, (0..fixes.len()).filter(|&i| f(&fixes[i])).map(|i| i as Elem))
    };
    let sl = stab(&|f| f.0)?;
    let sp_ = stab(&|f| f.1)?;
    let both = stab(&|f| f.0 && f.1)?;
    out.push(Clause::new(
        "stabilizer of the ideal line is AM",
        &sl == t.am(),
        format!("order {}", sl.order()),
    ));
    out.push(Clause::new(
        "stabilizer of the ideal point is BM",
        &sp_ == t.bm(),
        format!("order {}", sp_.order()),
    ));
    out.push(Clause::new(
        "joint stabilizer is M",
        &both == t.m(),
        format!("order {}", both.order()),
    ));

    let n = sp.order();
    let gens = |h: &Subgroup| -> Vec<Collineation> {
        h.generators().iter().map(|&x| sp.collineation(x)).collect()
    };
    let pts = orbit_size(&gens(t.bm()), sp.base_point(), true);
    out.push(Clause::new(
        "BM transitive on points off L-infinity",
        pts == n * n,
        format!("orbit of size {pts}"),
    ));
    let lines = orbit_size(&gens(t.am()), sp.base_line(), false);
    out.push(Clause::new(
        "AM transitive on lines off infinity",
        lines == n * n,
        format!("orbit of size {lines}"),
    ));
    Ok(out)
}
