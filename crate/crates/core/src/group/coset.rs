use super::{Elem, Subgroup};
use crate::limits;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Hx`
    Right,
    /// `xH`
    Left,
}

/// The cosets of a subgroup, ordered by their least element id.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    subgroup: Subgroup,
    side: Side,
    reps: Vec<Elem>,
    index: Vec<u32>,
}

pub fn coset_system(h: &Subgroup, side: Side) -> Result<CosetSystem> {
    let g = h.group();
    let n = g.order();
    limits::check_elements("coset system", n)?;
    let members = h.to_vec();
    let mut index = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(n / h.order());
    for x in g.elements() {
        if index[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &y in &members {
            let e = match side {
                Side::Right => g.mul(y, x),
                Side::Left => g.mul(x, y),
            };
            index[e as usize] = c;
        }
    }
    Ok(CosetSystem {
        subgroup: h.clone(),
        side,
        reps,
        index,
    })
}

impl CosetSystem {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Least element of each coset, in coset order.
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    #[inline]
    pub fn index_of(&self, x: Elem) -> usize {
        self.index[x as usize] as usize
    }

    /// Members of coset `i`.
    pub fn coset(&self, i: usize) -> Vec<Elem> {
        let g = self.subgroup.group();
        let x = self.reps[i];
        let mut v: Vec<Elem> = self
            .subgroup
            .elements()
            .map(|y| match self.side {
                Side::Right => g.mul(y, x),
                Side::Left => g.mul(x, y),
            })
            .collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn cosets_partition() {
        let g = catalog::dihedral(12).unwrap();
        for h in crate::group::all_subgroups(&g).unwrap() {
            for side in [Side::Right, Side::Left] {
                let c = coset_system(&h, side).unwrap();
                assert_eq!(c.len() * h.order(), 12);
                let mut total = 0;
                for i in 0..c.len() {
                    let members = c.coset(i);
                    assert_eq!(members[0], c.reps()[i]);
                    for &x in &members {
                        assert_eq!(c.index_of(x), i);
                    }
                    total += members.len();
                }
                assert_eq!(total, 12);
            }
        }
    }

    #[test]
    fn whole_group_is_one_coset() {
        let g = catalog::quaternion();
        let c = coset_system(&g.whole(), Side::Right).unwrap();
        assert_eq!(c.len(), 1);
    }
}
