use super::{Collineation, ProjectivePlane};
use crate::algebra::FiniteField;
use crate::{Error, Result};

/// Index layout shared with soft planes: point 0 = `(0:1:0)`, points
/// `1 + xq + y` = `(x:y:1)`, points `1 + q² + m` = `(1:m:0)`; line 0 is
/// `z = 0`, lines `1 + mq + b` are `y = mx + b`, lines `1 + q² + c` are
/// `x = c`.
struct Layout<'a> {
    f: &'a FiniteField,
    q: usize,
}

impl Layout<'_> {
    fn point(&self, v: [u32; 3]) -> usize {
        let f = self.f;
        let q = self.q;
        if v[2] != 0 {
            let zi = f.inv(v[2]).unwrap();
            let x = f.mul(v[0], zi) as usize;
            let y = f.mul(v[1], zi) as usize;
            1 + x * q + y
        } else if v[0] != 0 {
            let xi = f.inv(v[0]).unwrap();
            1 + q * q + f.mul(v[1], xi) as usize
        } else {
            0
        }
    }

    fn coords(&self, p: usize) -> [u32; 3] {
        let q = self.q;
        if p == 0 {
            [0, 1, 0]
        } else if p <= q * q {
            let i = p - 1;
            [(i / q) as u32, (i % q) as u32, 1]
        } else {
            [1, (p - 1 - q * q) as u32, 0]
        }
    }
}

/// `PG(2, q)` in the flag-aligned layout, with `(∞, L∞) = ((0:1:0), z=0)`.
pub fn build_desarguesian(q: u32) -> Result<ProjectivePlane> {
    if q > 32 {
        return Err(Error::InvalidInput(format!("order {q} exceeds 32")));
    }
    let f = FiniteField::of_order(q)?;
    let qs = q as usize;
    let mut lines = Vec::with_capacity(qs * qs + qs + 1);
    let mut l_inf = vec![0];
    l_inf.extend((0..qs).map(|m| 1 + qs * qs + m));
    lines.push(l_inf);
    for m in 0..q {
        for b in 0..q {
            let mut pts: Vec<usize> = (0..q)
                .map(|x| {
                    let y = f.add(f.mul(m, x), b);
                    1 + x as usize * qs + y as usize
                })
                .collect();
            pts.push(1 + qs * qs + m as usize);
            lines.push(pts);
        }
    }
    for c in 0..qs {
        let mut pts = vec![0];
        pts.extend((0..qs).map(|y| 1 + c * qs + y));
        lines.push(pts);
    }
    ProjectivePlane::from_lines(lines, true)
}

/// The collineation `v ↦ vA` of `PG(2, q)` (row vectors, `A` row-major
/// with field element ids), in the layout of [`build_desarguesian`].
pub fn linear_collineation(q: u32, matrix: &[u32; 9]) -> Result<Collineation> {
    let f = FiniteField::of_order(q)?;
    let plane = build_desarguesian(q)?;
    let lay = Layout { f: &f, q: q as usize };
    let points = (0..plane.num_points())
        .map(|p| {
            let v = lay.coords(p);
            let mut w = [0u32; 3];
            for (j, wj) in w.iter_mut().enumerate() {
                for (i, &vi) in v.iter().enumerate() {
                    *wj = f.add(*wj, f.mul(vi, matrix[i * 3 + j]));
                }
            }
            if w == [0, 0, 0] {
                return Err(Error::InvalidInput("singular matrix".into()));
            }
            Ok(lay.point(w) as u16)
        })
        .collect::<Result<Vec<u16>>>()?;
    Collineation::from_point_map(&plane, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let p = build_desarguesian(q).unwrap();
            assert_eq!(p.order(), q as usize);
            assert!(p.incident(0, 0));
        }
    }

    #[test]
    fn layout_round_trip() {
        let f = FiniteField::of_order(4).unwrap();
        let lay = Layout { f: &f, q: 4 };
        for p in 0..21 {
            assert_eq!(lay.point(lay.coords(p)), p);
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(build_desarguesian(6).is_err());
    }
}
