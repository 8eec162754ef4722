use std::fmt;

use super::ProjectivePlane;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtrClass {
    Field,
    /// Linear with associative addition and both distributive laws, but not
    /// a field.
    Semifield,
    Other,
}

impl fmt::Display for PtrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PtrClass::Field => "field",
            PtrClass::Semifield => "semifield",
            PtrClass::Other => "other",
        })
    }
}

/// A planar ternary ring `T(x, m, b)` on labels `0..n`, with `0` and `1`
/// the labels of `O` and `I`.
#[derive(Clone, Debug)]
pub struct TernaryRing {
    n: usize,
    quadrilateral: [usize; 4],
    table: Vec<u16>,
    pub linear: bool,
    pub additive_associative: bool,
    pub additive_commutative: bool,
    pub multiplicative_associative: bool,
    pub multiplicative_commutative: bool,
    pub left_distributive: bool,
    pub right_distributive: bool,
}

impl TernaryRing {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `(O, X, Y, I)`.
    pub fn quadrilateral(&self) -> [usize; 4] {
        self.quadrilateral
    }

    #[inline]
    pub fn t(&self, x: usize, m: usize, b: usize) -> usize {
        self.table[(x * self.n + m) * self.n + b] as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.t(a, 1, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t(a, b, 0)
    }

    pub fn class(&self) -> PtrClass {
        let semifield = self.linear
            && self.additive_associative
            && self.left_distributive
            && self.right_distributive;
        if semifield
            && self.additive_commutative
            && self.multiplicative_associative
            && self.multiplicative_commutative
        {
            PtrClass::Field
        } else if semifield {
            PtrClass::Semifield
        } else {
            PtrClass::Other
        }
    }

    /// The plane is desarguesian exactly when its ternary rings are fields.
    pub fn is_field(&self) -> bool {
        self.class() == PtrClass::Field
    }
}

/// For a flagged plane: `O` = point 1, `X` = point `1 + n²`, `Y` = `∞`,
/// and `I` the least point off `L∞`, `OX`, `OY`. Otherwise the
/// lexicographically least quadrilateral.
pub fn default_quadrilateral(plane: &ProjectivePlane) -> Result<[usize; 4]> {
    let v = plane.num_points();
    let n = plane.order();
    let (o, x, y) = if plane.has_flag() {
        let x = 1 + n * n;
        if plane.incident(1, 0) || !plane.incident(x, 0) {
            return Err(Error::Plane("flagged plane does not follow the point layout".into()));
        }
        (1, x, 0)
    } else {
        let l01 = plane.join(0, 1);
        let y = (0..v).find(|&p| !plane.incident(p, l01)).unwrap();
        (0, 1, y)
    };
    let lines = [plane.join(o, x), plane.join(o, y), plane.join(x, y)];
    let i = (0..v)
        .find(|&p| lines.iter().all(|&l| !plane.incident(p, l)))
        .ok_or_else(|| Error::Plane("no unit point".into()))?;
    Ok([o, x, y, i])
}

/// Hall coordinatization with respect to the quadrilateral `(O, X, Y, I)`:
/// `L∞ = XY`, `(x, x)` lies on `OI`, `(x, y)` is the meet of the line
/// through `(x, x)` and `Y` with the line through `(y, y)` and `X`, and
/// `y = T(x, m, b)` when `(x, y)` is on the line through the slope point
/// `(m)` and `(0, b)`.
pub fn coordinatize_ptr(plane: &ProjectivePlane, quad: [usize; 4]) -> Result<TernaryRing> {
    let [o, x_pt, y_pt, i_pt] = quad;
    let v = plane.num_points();
    if quad.iter().any(|&p| p >= v) {
        return Err(Error::Plane("quadrilateral point out of range".into()));
    }
    for (a, b, c) in [(o, x_pt, y_pt), (o, x_pt, i_pt), (o, y_pt, i_pt), (x_pt, y_pt, i_pt)] {
        if plane.collinear(a, b, c) {
            return Err(Error::Plane(format!("points {a}, {b}, {c} are collinear")));
        }
    }
    let n = plane.order();
    let oi = plane.join(o, i_pt);
    let inf = plane.join(x_pt, y_pt);
    let u = plane.meet(oi, inf);
    let mut diag = vec![o, i_pt];
    diag.extend(
        plane
            .points_on(oi)
            .iter()
            .map(|&p| p as usize)
            .filter(|&p| p != o && p != i_pt && p != u),
    );
    debug_assert_eq!(diag.len(), n);
    let mut label = vec![usize::MAX; v];
    for (k, &p) in diag.iter().enumerate() {
        label[p] = k;
    }
    let point = |x: usize, y: usize| {
        plane.meet(plane.join(diag[x], y_pt), plane.join(diag[y], x_pt))
    };
    let y_of = |p: usize| label[plane.meet(plane.join(p, x_pt), oi)];
    let slope = |m: usize| plane.meet(plane.join(o, point(1, m)), inf);
    let verticals: Vec<usize> = (0..n).map(|x| plane.join(diag[x], y_pt)).collect();

    let mut table = vec![0u16; n * n * n];
    for m in 0..n {
        let s = slope(m);
        for b in 0..n {
            let line = plane.join(s, point(0, b));
            for (x, &vert) in verticals.iter().enumerate() {
                let p = plane.meet(line, vert);
                table[(x * n + m) * n + b] = y_of(p) as u16;
            }
        }
    }
    let mut r = TernaryRing {
        n,
        quadrilateral: quad,
        table,
        linear: false,
        additive_associative: false,
        additive_commutative: false,
        multiplicative_associative: false,
        multiplicative_commutative: false,
        left_distributive: false,
        right_distributive: false,
    };
    let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| f(a, b, c))))
    };
    r.linear = all3(&|x, m, b| r.t(x, m, b) == r.add(r.mul(x, m), b));
    r.additive_associative = all3(&|a, b, c| r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
    r.additive_commutative = (0..n).all(|a| (0..n).all(|b| r.add(a, b) == r.add(b, a)));
    r.multiplicative_associative = all3(&|a, b, c| r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
    r.multiplicative_commutative = (0..n).all(|a| (0..n).all(|b| r.mul(a, b) == r.mul(b, a)));
    r.left_distributive = all3(&|a, b, c| r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
    r.right_distributive = all3(&|a, b, c| r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c)));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::build_desarguesian;

    #[test]
    fn desarguesian_planes_give_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let p = build_desarguesian(q).unwrap();
            let quad = default_quadrilateral(&p).unwrap();
            let r = coordinatize_ptr(&p, quad).unwrap();
            assert_eq!(r.class(), PtrClass::Field, "q = {q}");
            // 0 and 1 behave as identities
            for a in 0..q as usize {
                assert_eq!(r.add(a, 0), a);
                assert_eq!(r.mul(a, 1), a);
                assert_eq!(r.mul(1, a), a);
                assert_eq!(r.mul(a, 0), 0);
            }
        }
    }

    #[test]
    fn collinear_quadrilateral_rejected() {
        let p = build_desarguesian(3).unwrap();
        let l = p.points_on(1);
        let quad = [l[0] as usize, l[1] as usize, l[2] as usize, 0];
        assert!(coordinatize_ptr(&p, quad).is_err());
    }

    #[test]
    fn unflagged_default_quadrilateral() {
        let p = build_desarguesian(3).unwrap();
        let q = ProjectivePlane::from_lines(p.lines(), false).unwrap();
        let quad = default_quadrilateral(&q).unwrap();
        assert_eq!(&quad[..2], &[0, 1]);
        assert!(coordinatize_ptr(&q, quad).unwrap().is_field());
    }
}
