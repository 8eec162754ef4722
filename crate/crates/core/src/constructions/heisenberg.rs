use std::sync::Arc;

use crate::algebra::{CoordinateRing, FieldAutomorphism};
use crate::group::{Elem, Group, GroupLaw, Subgroup};
use crate::soft::{verify_soft_triple, SoftTriple};
use crate::{Error, Result};

/// Unitriangular `3×3` matrices `[[1,a,b],[0,1,c],[0,0,1]]` as triples
/// `(a, b, c)` with id `a + n·b + n²·c` and product
/// `(a,b,c)(a',b',c') = (a+a', b+b'+a·c', c+c')`.
struct HeisenbergLaw {
    n: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    mul: Vec<u32>,
}

impl HeisenbergLaw {
    fn new(ring: &dyn CoordinateRing) -> Self {
        let n = ring.order();
        let mut add = vec![0; (n * n) as usize];
        let mut mul = vec![0; (n * n) as usize];
        for x in 0..n {
            for y in 0..n {
                add[(x * n + y) as usize] = ring.add(x, y);
                mul[(x * n + y) as usize] = ring.mul(x, y);
            }
        }
        let neg = (0..n).map(|x| ring.neg(x)).collect();
        HeisenbergLaw { n, add, neg, mul }
    }

    #[inline]
    fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.n + y) as usize]
    }

    #[inline]
    fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.n + y) as usize]
    }

    #[inline]
    fn split(&self, e: Elem) -> (u32, u32, u32) {
        let n = self.n;
        (e % n, (e / n) % n, e / (n * n))
    }

    #[inline]
    fn join(&self, a: u32, b: u32, c: u32) -> Elem {
        a + self.n * (b + self.n * c)
    }
}

impl GroupLaw for HeisenbergLaw {
    fn order(&self) -> usize {
        (self.n as usize).pow(3)
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (a, b, c) = self.split(x);
        let (a2, b2, c2) = self.split(y);
        self.join(
            self.add(a, a2),
            self.add(self.add(b, b2), HeisenbergLaw::mul(self, a, c2)),
            self.add(c, c2),
        )
    }

    fn inv(&self, x: Elem) -> Elem {
        let (a, b, c) = self.split(x);
        let b2 = self.add(self.neg[b as usize], HeisenbergLaw::mul(self, a, c));
        self.join(self.neg[a as usize], b2, self.neg[c as usize])
    }
}

/// The Heisenberg group over a field or semifield together with its soft
/// triple `A = (∗,0,0)`, `B = (0,0,∗)`, `M = (0,∗,0)`.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    ring: Arc<dyn CoordinateRing>,
    triple: SoftTriple,
}

impl Heisenberg {
    /// Builds the group and verifies the triple. Associativity follows from
    /// the two distributive laws of the ring; it is also spot-checked.
    pub fn new(ring: Arc<dyn CoordinateRing>) -> Result<Self> {
        let n = ring.order();
        if n < 2 {
            return Err(Error::Construction("ring of order < 2".into()));
        }
        let law = HeisenbergLaw::new(ring.as_ref());
        let g = Group::structured(Box::new(law), format!("Heis({n})"))?;
        let a = Subgroup::from_elements(&g, (0..n).map(|x| x as Elem))?;
        let m = Subgroup::from_elements(&g, (0..n).map(|x| x * n))?;
        let b = Subgroup::from_elements(&g, (0..n).map(|x| x * n * n))?;
        let triple = verify_soft_triple(&g, &a, &b, &m)?;
        Ok(Heisenberg { ring, triple })
    }

    pub fn ring(&self) -> &Arc<dyn CoordinateRing> {
        &self.ring
    }

    pub fn triple(&self) -> &SoftTriple {
        &self.triple
    }

    pub fn group(&self) -> &Group {
        self.triple.group()
    }

    pub fn element(&self, a: u32, b: u32, c: u32) -> Elem {
        let n = self.ring.order();
        a + n * (b + n * c)
    }

    pub fn coordinates(&self, e: Elem) -> (u32, u32, u32) {
        let n = self.ring.order();
        (e % n, (e / n) % n, e / (n * n))
    }

    /// The automorphism applying `α` to every matrix entry, as a table.
    pub fn entrywise(&self, alpha: &FieldAutomorphism) -> Result<Vec<Elem>> {
        if alpha.field().order() != self.ring.order() {
            return Err(Error::Construction("automorphism of a different field".into()));
        }
        Ok(self
            .group()
            .elements()
            .map(|e| {
                let (a, b, c) = self.coordinates(e);
                self.element(alpha.apply(a), alpha.apply(b), alpha.apply(c))
            })
            .collect())
    }
}

/// The soft triple of the Heisenberg group over `ring`.
pub fn heisenberg(ring: Arc<dyn CoordinateRing>) -> Result<SoftTriple> {
    Ok(Heisenberg::new(ring)?.triple().clone())
}
