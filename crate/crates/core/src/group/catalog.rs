//! Small named groups, all on structured laws.

use super::{Elem, Group, GroupLaw};
use crate::algebra::prime_power;
use crate::{Error, Result};

/// `Z_{m₁} × … × Z_{m_r}` with mixed-radix element ids (first factor fastest).
struct AbelianLaw {
    moduli: Vec<u32>,
    order: usize,
}

impl AbelianLaw {
    fn combine(&self, a: Elem, b: Elem, sign: bool) -> Elem {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &m in &self.moduli {
            let x = a % m;
            let y = b % m;
            let d = if sign { (x + y) % m } else { (m - x) % m };
            out += d * place;
            place *= m;
            a /= m;
            b /= m;
        }
        out
    }
}

impl GroupLaw for AbelianLaw {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.combine(a, b, true)
    }
    fn inv(&self, a: Elem) -> Elem {
        self.combine(a, 0, false)
    }
}

/// `r^i s^j` with id `i + m·j`.
struct DihedralLaw {
    m: u32,
}

impl GroupLaw for DihedralLaw {
    fn order(&self) -> usize {
        2 * self.m as usize
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let m = self.m;
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        let r = if j == 0 { (i + k) % m } else { (i + m - k) % m };
        r + m * ((j + l) % 2)
    }
    fn inv(&self, a: Elem) -> Elem {
        let m = self.m;
        if a < m {
            (m - a) % m
        } else {
            a
        }
    }
}

/// Dicyclic group of order `4m`: `a^i x^j` with `x² = a^m`, `a^x = a⁻¹`;
/// id `i + 2m·j`.
struct DicyclicLaw {
    m: u32,
}

impl GroupLaw for DicyclicLaw {
    fn order(&self) -> usize {
        4 * self.m as usize
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = 2 * self.m;
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        if j == 0 {
            return (i + k) % n + n * l;
        }
        let e = (i + n - k) % n;
        if l == 0 {
            e + n
        } else {
            (e + self.m) % n
        }
    }
    fn inv(&self, a: Elem) -> Elem {
        let n = 2 * self.m;
        if a < n {
            (n - a) % n
        } else {
            // (a^i x)⁻¹ = a^{i+m} x
            (a % n + self.m) % n + n
        }
    }
}

/// Direct product with id `g + |G|·h`.
struct ProductLaw {
    left: Group,
    right: Group,
}

impl GroupLaw for ProductLaw {
    fn order(&self) -> usize {
        self.left.order() * self.right.order()
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.left.order() as Elem;
        self.left.mul(a % n, b % n) + n * self.right.mul(a / n, b / n)
    }
    fn inv(&self, a: Elem) -> Elem {
        let n = self.left.order() as Elem;
        self.left.inv(a % n) + n * self.right.inv(a / n)
    }
}

pub fn abelian(moduli: &[u32]) -> Result<Group> {
    if moduli.iter().any(|&m| m == 0) {
        return Err(Error::InvalidInput("cyclic factor of order 0".into()));
    }
    let order = moduli.iter().map(|&m| m as usize).product();
    let label = if moduli.is_empty() {
        "1".to_string()
    } else {
        moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    };
    Group::structured(
        Box::new(AbelianLaw {
            moduli: moduli.to_vec(),
            order,
        }),
        label,
    )
}

pub fn cyclic(n: u32) -> Result<Group> {
    abelian(&[n])
}

pub fn elementary_abelian(p: u32, r: u32) -> Result<Group> {
    abelian(&vec![p; r as usize])
}

/// Dihedral group of the given order (`2m`).
pub fn dihedral(order: u32) -> Result<Group> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidInput(format!("dihedral order {order} is not even")));
    }
    Group::structured(Box::new(DihedralLaw { m: order / 2 }), format!("D{order}"))
}

/// Dicyclic group of order `4m`; order 8 is the quaternion group.
pub fn dicyclic(order: u32) -> Result<Group> {
    if order < 4 || order % 4 != 0 {
        return Err(Error::InvalidInput(format!("dicyclic order {order} is not a multiple of 4")));
    }
    let label = if order == 8 { "Q8".to_string() } else { format!("Dic{order}") };
    Group::structured(Box::new(DicyclicLaw { m: order / 4 }), label)
}

pub fn quaternion() -> Group {
    dicyclic(8).expect("valid order")
}

pub fn direct_product(left: &Group, right: &Group) -> Result<Group> {
    let label = format!("{}x{}", left.label(), right.label());
    Group::structured(
        Box::new(ProductLaw {
            left: left.clone(),
            right: right.clone(),
        }),
        label,
    )
}

/// The five groups of order 8 up to isomorphism.
pub fn groups_of_order_8() -> Vec<Group> {
    vec![
        cyclic(8).unwrap(),
        abelian(&[4, 2]).unwrap(),
        elementary_abelian(2, 3).unwrap(),
        dihedral(8).unwrap(),
        quaternion(),
    ]
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All abelian groups of order `n` up to isomorphism, as products of cyclic
/// groups of prime-power order.
pub fn abelian_groups(n: u32) -> Result<Vec<Group>> {
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    let mut choices: Vec<Vec<u32>> = vec![Vec::new()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for part in partitions(e, e) {
            for c in &choices {
                let mut c = c.clone();
                c.extend(part.iter().map(|&x| p.pow(x)));
                next.push(c);
            }
        }
        choices = next;
    }
    choices.iter().map(|m| abelian(m)).collect()
}

/// True when `n` is a prime power; used to label catalog groups.
pub fn is_prime_power(n: u32) -> bool {
    prime_power(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_8_groups_have_distinct_histograms() {
        let hs: Vec<_> = groups_of_order_8()
            .iter()
            .map(|g| (g.is_abelian(), crate::group::element_order_histogram(g)))
            .collect();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                assert_ne!(hs[i], hs[j]);
            }
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        assert_eq!(q.elements().filter(|&x| q.element_order(x) == 2).count(), 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn dihedral_has_five_involutions() {
        let d = dihedral(8).unwrap();
        assert_eq!(d.elements().filter(|&x| d.element_order(x) == 2).count(), 5);
    }

    #[test]
    fn abelian_group_counts() {
        assert_eq!(abelian_groups(8).unwrap().len(), 3);
        assert_eq!(abelian_groups(64).unwrap().len(), 11);
        assert_eq!(abelian_groups(36).unwrap().len(), 4);
        assert_eq!(abelian_groups(1).unwrap().len(), 1);
    }

    #[test]
    fn dense_copies_agree() {
        for g in groups_of_order_8() {
            let d = g.to_dense().unwrap();
            assert_eq!(d.cayley_table().unwrap(), g.cayley_table().unwrap());
        }
    }
}
