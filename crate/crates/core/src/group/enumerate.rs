use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{Elem, Group, Subgroup};
use crate::limits;
use crate::Result;

/// Subgroups whose order divides `bound`, built by adjoining one element at
/// a time. Output is sorted by (order, member list).
fn subgroups_dividing(g: &Group, bound: usize) -> Result<Vec<Subgroup>> {
    limits::check_elements("subgroup enumeration", g.order())?;
    let candidates: Vec<Elem> = g
        .elements()
        .filter(|&x| x != 0 && bound % g.element_order(x) as usize == 0)
        .collect();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let trivial = g.trivial();
    seen.insert(trivial.members().clone());
    let mut out = vec![trivial];
    let mut frontier = 0;
    while frontier < out.len() {
        let h = out[frontier].clone();
        frontier += 1;
        for &x in &candidates {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(x);
            let k = Subgroup::generated(g, &gens)?;
            if bound % k.order() != 0 {
                continue;
            }
            if seen.insert(k.members().clone()) {
                limits::check_elements("subgroup count", out.len())?;
                out.push(k);
            }
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    Ok(out)
}

pub fn all_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    subgroups_dividing(g, g.order())
}

pub fn subgroups_of_order(g: &Group, order: usize) -> Result<Vec<Subgroup>> {
    if order == 0 || g.order() % order != 0 {
        return Ok(Vec::new());
    }
    Ok(subgroups_dividing(g, order)?
        .into_iter()
        .filter(|h| h.order() == order)
        .collect())
}

/// The least sorted member list among the conjugates of `h`.
pub fn canonical_conjugate(h: &Subgroup) -> Vec<Elem> {
    let g = h.group();
    let mut best = h.to_vec();
    for x in g.elements() {
        let mut v: Vec<Elem> = h.elements().map(|y| g.conj(y, x)).collect();
        v.sort_unstable();
        if v < best {
            best = v;
        }
    }
    best
}

/// One subgroup per conjugacy class, namely the one with the least member
/// list. Input order is preserved otherwise.
pub fn conjugacy_class_reps(subgroups: &[Subgroup]) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in subgroups {
        let canon = canonical_conjugate(h);
        if seen.insert(canon.clone()) {
            let g = h.group();
            out.push(Subgroup::from_elements(g, canon).expect("conjugate of a subgroup"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&catalog::dihedral(8).unwrap()).unwrap().len(), 10);
        assert_eq!(all_subgroups(&catalog::quaternion()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&catalog::elementary_abelian(2, 3).unwrap()).unwrap().len(), 16);
        assert_eq!(all_subgroups(&catalog::cyclic(12).unwrap()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&catalog::dihedral(12).unwrap()).unwrap().len(), 16);
    }

    #[test]
    fn conjugacy_classes_of_d8() {
        let g = catalog::dihedral(8).unwrap();
        let reps = conjugacy_class_reps(&all_subgroups(&g).unwrap());
        assert_eq!(reps.len(), 8);
    }

    #[test]
    fn restricted_enumeration_agrees() {
        let g = catalog::dihedral(12).unwrap();
        let all = all_subgroups(&g).unwrap();
        for d in [1, 2, 3, 4, 6, 12] {
            let direct: Vec<_> = subgroups_of_order(&g, d).unwrap();
            let filtered: Vec<_> = all.iter().filter(|h| h.order() == d).cloned().collect();
            assert_eq!(direct, filtered);
        }
    }
}
