use std::sync::Arc;

use super::{is_prime, Addition, CoordinateRing, FiniteField};
use crate::{Error, Result};

/// A finite semifield given by its multiplication table. Addition is
/// digitwise on base-`p` coordinates of the element index.
#[derive(Clone, Debug)]
pub struct SemifieldTable {
    q: u32,
    p: u32,
    m: u32,
    addition: Addition,
    mul: Arc<Vec<u32>>,
    associative: bool,
    commutative: bool,
}

impl PartialEq for SemifieldTable {
    fn eq(&self, other: &Self) -> bool {
        (self.q, self.p, self.m) == (other.q, other.p, other.m) && self.mul == other.mul
    }
}

impl Eq for SemifieldTable {}

impl SemifieldTable {
    /// Validates every semifield axiom exhaustively: identity, both
    /// distributive laws, and the absence of zero divisors.
    pub fn from_table(q: u32, p: u32, m: u32, mul: Vec<u32>) -> Result<Self> {
        if !is_prime(p) || p.checked_pow(m) != Some(q) {
            return Err(Error::Algebra(format!("order {q} is not {p}^{m}")));
        }
        if mul.len() != (q * q) as usize {
            return Err(Error::Algebra(format!(
                "table has {} entries, expected {}",
                mul.len(),
                q * q
            )));
        }
        if let Some(pos) = mul.iter().position(|&v| v >= q) {
            return Err(Error::Algebra(format!(
                "entry ({}, {}) = {} is not an element",
                pos as u32 / q,
                pos as u32 % q,
                mul[pos]
            )));
        }
        let addition = Addition::new(p, q);
        let at = |a: u32, b: u32| mul[(a * q + b) as usize];

        for a in 0..q {
            if at(1, a) != a || at(a, 1) != a {
                return Err(Error::Algebra(format!("element 1 is not an identity for {a}")));
            }
        }
        for a in 1..q {
            for b in 1..q {
                if at(a, b) == 0 {
                    return Err(Error::Algebra(format!("zero divisors: {a} * {b} = 0")));
                }
            }
        }
        for a in 0..q {
            for b in 0..q {
                let ab = addition.add(a, b);
                for c in 0..q {
                    if at(c, ab) != addition.add(at(c, a), at(c, b)) {
                        return Err(Error::Algebra(format!(
                            "left distributivity fails: {c}*({a}+{b}) != {c}*{a}+{c}*{b}"
                        )));
                    }
                    if at(ab, c) != addition.add(at(a, c), at(b, c)) {
                        return Err(Error::Algebra(format!(
                            "right distributivity fails: ({a}+{b})*{c} != {a}*{c}+{b}*{c}"
                        )));
                    }
                }
            }
        }
        let associative =
            (0..q).all(|a| (0..q).all(|b| (0..q).all(|c| at(at(a, b), c) == at(a, at(b, c)))));
        let commutative = (0..q).all(|a| (0..q).all(|b| at(a, b) == at(b, a)));
        Ok(SemifieldTable {
            q,
            p,
            m,
            addition,
            mul: Arc::new(mul),
            associative,
            commutative,
        })
    }

    /// The multiplication table of a field, as a semifield.
    pub fn from_field(field: &FiniteField) -> Self {
        let q = field.order();
        let mul = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .map(|(a, b)| field.mul(a, b))
            .collect();
        Self::from_table(q, field.p(), field.degree(), mul).expect("fields are semifields")
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// A proper semifield is one that is not a field.
    pub fn is_proper(&self) -> bool {
        !(self.associative && self.commutative)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.addition.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }
}

impl CoordinateRing for SemifieldTable {
    fn order(&self) -> u32 {
        self.q
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        self.addition.add(a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        self.addition.neg(a)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        SemifieldTable::mul(self, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_is_a_semifield() {
        let f = FiniteField::of_order(4).unwrap();
        let s = SemifieldTable::from_field(&f);
        assert!(s.is_associative() && s.is_commutative() && !s.is_proper());
    }

    #[test]
    fn zero_divisor_named() {
        // Z/4 multiplication on 4 elements is not even distributive over
        // GF(2)^2 addition; use GF(4) with one entry damaged instead.
        let f = FiniteField::of_order(4).unwrap();
        let mut t = SemifieldTable::from_field(&f).table().to_vec();
        t[2 * 4 + 3] = 0;
        let err = SemifieldTable::from_table(4, 2, 2, t).unwrap_err().to_string();
        assert!(err.contains("2 * 3 = 0"), "{err}");
    }

    #[test]
    fn missing_identity_rejected() {
        let f = FiniteField::of_order(4).unwrap();
        let mut t = SemifieldTable::from_field(&f).table().to_vec();
        t.swap(4 + 2, 4 + 3);
        assert!(SemifieldTable::from_table(4, 2, 2, t).is_err());
    }
}
