use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{Elem, Group, GroupLaw};
use crate::limits::{self, MAX_PAIR_PRODUCTS};
use crate::{Error, Result};

/// A verified subgroup of a [`Group`], stored as a bitset over element ids
/// together with a small generating set.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    members: FixedBitSet,
    order: usize,
    gens: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order)
            .field("gens", &self.gens)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

/// Extends the closure in `list`/`set` after `gens.last()` was appended.
/// Returns the first product that escapes `bound`, if any.
fn extend_closure(
    group: &Group,
    list: &mut Vec<Elem>,
    set: &mut FixedBitSet,
    gens: &[Elem],
    bound: Option<&FixedBitSet>,
) -> Option<(Elem, Elem)> {
    let g = *gens.last().expect("at least one generator");
    let old = list.len();
    let push = |x: Elem, list: &mut Vec<Elem>, set: &mut FixedBitSet| -> bool {
        if !set.put(x as usize) {
            list.push(x);
            if let Some(b) = bound {
                return b.contains(x as usize);
            }
        }
        true
    };
    for i in 0..old {
        let x = group.mul(list[i], g);
        if !push(x, list, set) {
            return Some((list[i], g));
        }
    }
    let mut i = old;
    while i < list.len() {
        let e = list[i];
        for &s in gens {
            let x = group.mul(e, s);
            if !push(x, list, set) {
                return Some((e, s));
            }
        }
        i += 1;
    }
    None
}

/// Picks generators of the set `members` greedily in element order. Fails
/// with a witness product if the closure leaves `members`.
pub(crate) fn greedy_generators(
    group: &Group,
    members: &FixedBitSet,
) -> Result<(Vec<Elem>, FixedBitSet)> {
    let n = group.order();
    let mut set = FixedBitSet::with_capacity(n);
    set.insert(0);
    let mut list = vec![0];
    let mut gens = Vec::new();
    if !members.contains(0) {
        return Err(Error::NotSubgroup { a: 0, b: 0 });
    }
    for x in members.ones() {
        if set.contains(x) {
            continue;
        }
        gens.push(x as Elem);
        if let Some((a, b)) = extend_closure(group, &mut list, &mut set, &gens, Some(members)) {
            return Err(Error::NotSubgroup { a, b });
        }
    }
    Ok((gens, set))
}

impl Subgroup {
    pub fn whole(group: &Group) -> Subgroup {
        let n = group.order();
        let mut members = FixedBitSet::with_capacity(n);
        members.insert_range(..);
        Subgroup {
            group: group.clone(),
            members,
            order: n,
            gens: group.generators().to_vec(),
        }
    }

    pub fn trivial(group: &Group) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert(0);
        Subgroup {
            group: group.clone(),
            members,
            order: 1,
            gens: Vec::new(),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(group: &Group, gens: &[Elem]) -> Result<Subgroup> {
        let n = group.order();
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(0);
        let mut list = vec![0];
        let mut kept = Vec::new();
        for &g in gens {
            if set.contains(g as usize) {
                continue;
            }
            kept.push(g);
            extend_closure(group, &mut list, &mut set, &kept, None);
            limits::check_elements("subgroup closure", list.len())?;
        }
        Ok(Subgroup {
            group: group.clone(),
            order: list.len(),
            members: set,
            gens: kept,
        })
    }

    /// Verifies that `members` is a subgroup.
    pub fn from_set(group: &Group, members: FixedBitSet) -> Result<Subgroup> {
        let mut members = members;
        members.grow(group.order());
        let (gens, closure) = greedy_generators(group, &members)?;
        debug_assert_eq!(closure, members);
        Ok(Subgroup {
            group: group.clone(),
            order: members.count_ones(..),
            members,
            gens,
        })
    }

    pub fn from_elements(group: &Group, elems: impl IntoIterator<Item = Elem>) -> Result<Subgroup> {
        let mut members = FixedBitSet::with_capacity(group.order());
        for e in elems {
            if e as usize >= group.order() {
                return Err(Error::InvalidInput(format!("element {e} out of range")));
            }
            members.insert(e as usize);
        }
        Self::from_set(group, members)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Members in increasing id order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|x| x as Elem)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.elements().collect()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = &self.members & &other.members;
        Subgroup::from_set(&self.group, members).expect("intersections of subgroups are subgroups")
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        let gens: Vec<Elem> = self.gens.iter().chain(&other.gens).copied().collect();
        Subgroup::generated(&self.group, &gens)
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.group.order());
        for h in self.elements() {
            members.insert(self.group.conj(h, g) as usize);
        }
        let gens = self.gens.iter().map(|&h| self.group.conj(h, g)).collect();
        Subgroup {
            group: self.group.clone(),
            members,
            order: self.order,
            gens,
        }
    }

    /// Whether `g` normalizes this subgroup.
    pub fn normalized_by(&self, g: Elem) -> bool {
        self.gens.iter().all(|&h| self.contains(self.group.conj(h, g)))
    }

    pub fn is_normal(&self) -> bool {
        self.group.generators().iter().all(|&g| self.normalized_by(g))
    }

    /// Normal in the subgroup `over` (which must contain `self`).
    pub fn is_normal_in(&self, over: &Subgroup) -> bool {
        over.generators().iter().all(|&g| self.normalized_by(g))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Abelian of prime exponent.
    pub fn is_elementary_abelian(&self) -> bool {
        if !self.is_abelian() {
            return false;
        }
        if self.order == 1 {
            return true;
        }
        let p = (2..=self.order).find(|d| self.order % d == 0).unwrap() as u64;
        self.gens.iter().all(|&g| self.group.pow(g, p) == 0) && {
            let mut n = self.order;
            while n % p as usize == 0 {
                n /= p as usize;
            }
            n == 1
        }
    }

    /// Whether the subgroup's members lie in `set`.
    pub fn is_within(&self, set: &FixedBitSet) -> bool {
        self.members.is_subset(set)
    }
}

/// A subgroup viewed as a group in its own right, with ids `0..|H|`
/// assigned in increasing order of the parent ids.
#[derive(Clone, Debug)]
pub struct Restriction {
    parent: Group,
    group: Group,
    elements: Arc<Vec<Elem>>,
    index: Arc<Vec<Elem>>,
}

struct RestrictedLaw {
    parent: Group,
    elements: Arc<Vec<Elem>>,
    index: Arc<Vec<Elem>>,
}

impl GroupLaw for RestrictedLaw {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let x = self.parent.mul(self.elements[a as usize], self.elements[b as usize]);
        self.index[x as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.index[self.parent.inv(self.elements[a as usize]) as usize]
    }
}

impl Restriction {
    pub fn new(h: &Subgroup) -> Result<Restriction> {
        let elements = Arc::new(h.to_vec());
        let mut index = vec![Elem::MAX; h.group().order()];
        for (i, &x) in elements.iter().enumerate() {
            index[x as usize] = i as Elem;
        }
        let index = Arc::new(index);
        let law = RestrictedLaw {
            parent: h.group().clone(),
            elements: elements.clone(),
            index: index.clone(),
        };
        let label = format!("{} (order {} subgroup)", h.group().label(), h.order());
        let group = if h.order() <= limits::DENSE_MAX_ORDER {
            let n = h.order();
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n as Elem {
                for b in 0..n as Elem {
                    table.push(law.mul(a, b));
                }
            }
            Group::from_cayley_table(n, table, label)?
        } else {
            Group::structured(Box::new(law), label)?
        };
        Ok(Restriction {
            parent: h.group().clone(),
            group,
            elements,
            index,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Parent id of a restricted element.
    pub fn to_parent(&self, x: Elem) -> Elem {
        self.elements[x as usize]
    }

    /// Restricted id of a parent element, if it lies in the subgroup.
    pub fn from_parent(&self, y: Elem) -> Option<Elem> {
        let i = self.index[y as usize];
        (i != Elem::MAX).then_some(i)
    }

    /// A parent subgroup contained in the restricted one, re-expressed.
    pub fn restrict(&self, k: &Subgroup) -> Result<Subgroup> {
        let elems = k
            .elements()
            .map(|y| {
                self.from_parent(y)
                    .ok_or_else(|| Error::InvalidInput(format!("element {y} outside the subgroup")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subgroup::from_elements(&self.group, elems)
    }

    /// A subgroup of the restricted group as a parent subgroup.
    pub fn lift(&self, k: &Subgroup) -> Result<Subgroup> {
        Subgroup::from_elements(&self.parent, k.elements().map(|x| self.to_parent(x)))
    }
}

/// `XY = {xy | x ∈ X, y ∈ Y}`.
pub fn product_set(group: &Group, xs: &FixedBitSet, ys: &FixedBitSet) -> Result<FixedBitSet> {
    let (nx, ny) = (xs.count_ones(..), ys.count_ones(..));
    if nx.saturating_mul(ny) > MAX_PAIR_PRODUCTS {
        return Err(Error::budget("product set", nx * ny, MAX_PAIR_PRODUCTS));
    }
    let ylist: Vec<Elem> = ys.ones().map(|y| y as Elem).collect();
    let mut out = FixedBitSet::with_capacity(group.order());
    for x in xs.ones() {
        for &y in &ylist {
            out.insert(group.mul(x as Elem, y) as usize);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = catalog::dihedral(8).unwrap();
        let h = Subgroup::generated(&g, &[0]).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn from_elements_rejects_non_subgroup() {
        let g = catalog::cyclic(6).unwrap();
        let err = Subgroup::from_elements(&g, [0, 1]).unwrap_err();
        assert!(matches!(err, Error::NotSubgroup { .. }));
        assert_eq!(Subgroup::from_elements(&g, [0, 2, 4]).unwrap().order(), 3);
    }

    #[test]
    fn product_with_identity() {
        let g = catalog::dihedral(8).unwrap();
        let mut one = FixedBitSet::with_capacity(8);
        one.insert(0);
        let mut y = FixedBitSet::with_capacity(8);
        y.insert(3);
        y.insert(5);
        assert_eq!(product_set(&g, &one, &y).unwrap(), y);
    }

    #[test]
    fn product_of_two_order_two_subgroups_in_z2_cubed() {
        let g = catalog::elementary_abelian(2, 3).unwrap();
        let a = Subgroup::generated(&g, &[1]).unwrap();
        let b = Subgroup::generated(&g, &[2]).unwrap();
        let ab = product_set(&g, a.members(), b.members()).unwrap();
        assert_eq!(ab.count_ones(..), 4);
    }

    #[test]
    fn conjugates_are_subgroups_of_same_order() {
        let g = catalog::dihedral(12).unwrap();
        for h in crate::group::all_subgroups(&g).unwrap() {
            for x in g.elements() {
                let c = h.conjugate(x);
                assert_eq!(c.order(), h.order());
                let again = Subgroup::from_set(&g, c.members().clone()).unwrap();
                assert_eq!(again, c);
            }
        }
    }
}
