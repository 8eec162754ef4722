//! Finite group carriers and subgroup machinery.
//!
//! Elements are the integers `0..|G|` with `0` the identity. A [`Group`]
//! wraps a [`GroupLaw`]: either a verified Cayley table (the dense backend,
//! up to [`DENSE_MAX_ORDER`](crate::limits::DENSE_MAX_ORDER) elements) or a
//! structured law computing products from element coordinates.

pub mod catalog;
mod coset;
mod enumerate;
mod structure;
mod subgroup;

pub use coset::{coset_system, CosetSystem, Side};
pub use enumerate::{
    all_subgroups, canonical_conjugate, conjugacy_class_reps, subgroups_of_order,
};
pub use structure::{
    abelianization_invariants, center, center_and_series, centralizer, commutator_subgroup,
    derived_series, element_order_histogram, index_p_subgroups, lower_central_series,
    normal_closure, normalizer, p_part, sylow_subgroup, SeriesReport,
};
pub use subgroup::{product_set, Restriction, Subgroup};

use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::limits::{self, DENSE_MAX_ORDER};
use crate::{Error, Result};

pub type Elem = u32;

/// Seed for the randomized associativity certificate of structured laws.
pub const CERTIFICATE_SEED: u64 = 0x5eed_50f7;
pub const CERTIFICATE_TRIPLES: usize = 10_000;

/// A group multiplication on `0..order` with identity `0`.
pub trait GroupLaw: Send + Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Dense,
    Structured,
}

struct CayleyTable {
    n: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl GroupLaw for CayleyTable {
    fn order(&self) -> usize {
        self.n
    }
    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }
    #[inline]
    fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }
}

struct Inner {
    law: Box<dyn GroupLaw>,
    backend: Backend,
    label: String,
    generators: OnceLock<Vec<Elem>>,
}

/// A finite group. Cloning is cheap; clones share the same carrier.
#[derive(Clone)]
pub struct Group(Arc<Inner>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.0.label)
            .field("order", &self.order())
            .field("backend", &self.0.backend)
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Group {}

impl Group {
    /// Loads a Cayley table (`table[i * n + j] = i·j`) and verifies the group
    /// axioms. Associativity is decided exactly with Light's test over a
    /// generating set.
    pub fn from_cayley_table(n: usize, table: Vec<Elem>, label: impl Into<String>) -> Result<Group> {
        if n == 0 || table.len() != n * n {
            return Err(Error::GroupAxiom(format!("table of size {} for order {n}", table.len())));
        }
        if n > DENSE_MAX_ORDER {
            return Err(Error::budget("dense Cayley table", n, DENSE_MAX_ORDER));
        }
        if let Some(pos) = table.iter().position(|&x| x as usize >= n) {
            return Err(Error::GroupAxiom(format!("entry {pos} is out of range")));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::GroupAxiom(format!("0 is not an identity for {a}")));
            }
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for a in 0..n {
            seen.clear();
            for b in 0..n {
                let x = table[a * n + b] as usize;
                if seen.put(x) {
                    return Err(Error::GroupAxiom(format!("row {a} repeats {x}")));
                }
            }
            seen.clear();
            for b in 0..n {
                let x = table[b * n + a] as usize;
                if seen.put(x) {
                    return Err(Error::GroupAxiom(format!("column {a} repeats {x}")));
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("rows are permutations");
            if table[b * n + a] != 0 {
                return Err(Error::GroupAxiom(format!("{a} has no two-sided inverse")));
            }
            inverse[a] = b as Elem;
        }
        let law = CayleyTable { n, table, inverse };
        let group = Group(Arc::new(Inner {
            law: Box::new(law),
            backend: Backend::Dense,
            label: label.into(),
            generators: OnceLock::new(),
        }));
        let gens = group.generators();
        for &g in gens {
            for x in 0..n as Elem {
                let xg = group.mul(x, g);
                for y in 0..n as Elem {
                    if group.mul(x, group.mul(g, y)) != group.mul(xg, y) {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails: ({x}*{g})*{y} != {x}*({g}*{y})"
                        )));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Wraps a structured law. Identity and inverse axioms are checked on
    /// every element; associativity on a fixed pseudo-random sample of
    /// triples (the constructor is responsible for an algebraic argument).
    pub fn structured(law: Box<dyn GroupLaw>, label: impl Into<String>) -> Result<Group> {
        let n = law.order();
        limits::check_elements("structured group", n)?;
        for a in 0..n as Elem {
            if law.mul(0, a) != a || law.mul(a, 0) != a {
                return Err(Error::GroupAxiom(format!("0 is not an identity for {a}")));
            }
            let b = law.inv(a);
            if law.mul(a, b) != 0 || law.mul(b, a) != 0 {
                return Err(Error::GroupAxiom(format!("inv({a}) = {b} is not an inverse")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATE_SEED);
        for _ in 0..CERTIFICATE_TRIPLES {
            let (x, y, z) = (
                rng.gen_range(0..n) as Elem,
                rng.gen_range(0..n) as Elem,
                rng.gen_range(0..n) as Elem,
            );
            if law.mul(law.mul(x, y), z) != law.mul(x, law.mul(y, z)) {
                return Err(Error::GroupAxiom(format!(
                    "associativity fails: ({x}*{y})*{z} != {x}*({y}*{z})"
                )));
            }
        }
        Ok(Group(Arc::new(Inner {
            law,
            backend: Backend::Structured,
            label: label.into(),
            generators: OnceLock::new(),
        })))
    }

    pub fn order(&self) -> usize {
        self.0.law.order()
    }

    pub fn backend(&self) -> Backend {
        self.0.backend
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.law.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.0.law.inv(a)
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let (mut acc, mut base, mut e) = (0, a, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^g = g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self) -> &[Elem] {
        self.0.generators.get_or_init(|| {
            let mut all = FixedBitSet::with_capacity(self.order());
            all.insert_range(..);
            let (gens, _) = subgroup::greedy_generators(self, &all)
                .expect("the whole carrier is closed");
            gens
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The full multiplication table, row-major.
    pub fn cayley_table(&self) -> Result<Vec<Elem>> {
        let n = self.order();
        if n > DENSE_MAX_ORDER {
            return Err(Error::budget("Cayley table", n, DENSE_MAX_ORDER));
        }
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                t.push(self.mul(a, b));
            }
        }
        Ok(t)
    }

    /// Re-homes this group on a dense table, keeping element ids.
    pub fn to_dense(&self) -> Result<Group> {
        Group::from_cayley_table(self.order(), self.cayley_table()?, self.label().to_string())
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::trivial(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative_loop() {
        // A loop of order 5 that is not a group: the unique nonassociative
        // Latin square with identity 0 of order 5 used in textbooks.
        let t: Vec<Elem> = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0, //
        ];
        let err = Group::from_cayley_table(5, t, "loop").unwrap_err();
        assert!(matches!(err, Error::GroupAxiom(_)), "{err}");
    }

    #[test]
    fn rejects_missing_identity() {
        let t: Vec<Elem> = vec![1, 0, 0, 1];
        assert!(Group::from_cayley_table(2, t, "bad").is_err());
    }

    #[test]
    fn commutator_convention() {
        let g = catalog::dihedral(8).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let c = g.commutator(a, b);
                // ab = ba[a,b]
                assert_eq!(g.mul(g.mul(b, a), c), g.mul(a, b));
                let expect = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
                assert_eq!(c, expect);
            }
        }
    }

    #[test]
    fn structured_matches_dense() {
        let g = catalog::cyclic(12).unwrap();
        let d = g.to_dense().unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.mul(a, b), d.mul(a, b));
            }
        }
    }
}
