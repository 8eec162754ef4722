//! Finite coordinate rings: prime-power fields, semifield tables and field
//! automorphisms.
//!
//! Elements of a ring of order `q = p^m` are the integers `0..q`; an element's
//! base-`p` digits are its coordinates over the prime field, so addition is
//! always digitwise addition mod `p`. Element `0` is the additive identity
//! and element `1` the multiplicative identity.

mod field;
mod semifield;

pub use field::{field_eval_f, is_prime, prime_power, AdditiveMap, FieldAutomorphism, FiniteField};
pub use semifield::SemifieldTable;

use std::fmt::Debug;

/// A finite ring with identity used as matrix coordinates: either a field or
/// a (possibly nonassociative) semifield.
pub trait CoordinateRing: Send + Sync + Debug {
    fn order(&self) -> u32;
    fn characteristic(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

/// Digitwise addition of two base-`p` encoded vectors.
pub(crate) fn digit_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        let d = (a % p + b % p) % p;
        out += d * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

pub(crate) fn digit_neg(p: u32, mut a: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        let d = (p - a % p) % p;
        out += d * place;
        place *= p;
        a /= p;
    }
    out
}

/// Precomputed addition table for small orders, digit arithmetic otherwise.
#[derive(Clone, Debug)]
pub(crate) struct Addition {
    p: u32,
    q: u32,
    table: Option<std::sync::Arc<Vec<u32>>>,
    negs: std::sync::Arc<Vec<u32>>,
}

impl Addition {
    const TABLE_MAX: u32 = 256;

    pub(crate) fn new(p: u32, q: u32) -> Self {
        let table = (q <= Self::TABLE_MAX).then(|| {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(p, a, b);
                }
            }
            std::sync::Arc::new(t)
        });
        let negs = std::sync::Arc::new((0..q).map(|a| digit_neg(p, a)).collect());
        Addition { p, q, table, negs }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[(a * self.q + b) as usize],
            None => digit_add(self.p, a, b),
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        self.negs[a as usize]
    }
}
