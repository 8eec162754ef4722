use std::sync::Arc;

use super::{Addition, CoordinateRing};
use crate::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q = p^m` with `p` prime, or returns `None`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Polynomials over GF(p) as little-endian coefficient vectors.

fn poly_trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is small; Fermat inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lead_inv = inv_mod_p(g[dg], p);
    while r.len() > dg && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        if c != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let idx = dr - dg + i;
                r[idx] = (r[idx] + p - c * gi % p) % p;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
    }
    poly_trim(r)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            let r = poly_rem(modulus, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// The field GF(p^m) with elements encoded as base-`p` coefficient vectors
/// of polynomials reduced modulo an irreducible polynomial.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    addition: Addition,
    exp: Arc<Vec<u32>>,
    log: Arc<Vec<u32>>,
}

impl FiniteField {
    /// Builds GF(p^m). With no modulus, the least monic irreducible
    /// polynomial is used, where polynomials `x^m + c_{m-1}x^{m-1} + ... + c_0`
    /// are ordered by the integer `sum c_i p^i`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Algebra(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Algebra("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= 1 << 16)
            .ok_or_else(|| Error::Algebra(format!("GF({p}^{m}) is too large")))?;
        let modulus = match modulus {
            Some(coeffs) => {
                let f = poly_trim(coeffs.iter().map(|c| c % p).collect());
                if f.len() != m as usize + 1 {
                    return Err(Error::Algebra(format!(
                        "modulus has degree {}, expected {m}",
                        f.len() - 1
                    )));
                }
                let lead_inv = inv_mod_p(f[m as usize], p);
                let f: Vec<u32> = f.iter().map(|c| c * lead_inv % p).collect();
                if !is_irreducible(&f, p) {
                    return Err(Error::Algebra(format!(
                        "modulus {} is reducible over GF({p})",
                        format_poly(&f)
                    )));
                }
                f
            }
            None => (0..q)
                .map(|code| {
                    let mut f = Vec::with_capacity(m as usize + 1);
                    let mut c = code;
                    for _ in 0..m {
                        f.push(c % p);
                        c /= p;
                    }
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists"),
        };

        let mut field = FiniteField {
            p,
            m,
            q,
            modulus,
            addition: Addition::new(p, q),
            exp: Arc::new(Vec::new()),
            log: Arc::new(Vec::new()),
        };
        field.build_log_tables();
        Ok(field)
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(q) for a prime power `q`, with the default modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::Algebra(format!("{q} is not a prime power")))?;
        Self::new(p, m, None)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p as u64, self.m as usize);
        let da = digits(a, self.p, m);
        let db = digits(b, self.p, m);
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &mi) in self.modulus[..m].iter().enumerate() {
                let idx = deg - m + i;
                prod[idx] = (prod[idx] + c * (p - mi as u64)) % p;
            }
        }
        from_digits(prod[..m].iter().map(|&d| d as u32), self.p)
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        let mut prime_factors = Vec::new();
        let mut rest = order;
        let mut d = 2;
        while d * d <= rest {
            if rest % d == 0 {
                prime_factors.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            prime_factors.push(rest);
        }
        let slow_pow = |g: u32, mut e: u32| {
            let (mut acc, mut base) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.poly_mul(acc, base);
                }
                base = self.poly_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..self.q)
            .find(|&g| prime_factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0; self.q as usize];
        let mut x = 1;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = self.poly_mul(x, generator);
        }
        self.exp = Arc::new(exp);
        self.log = Arc::new(log);
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Little-endian coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.exp.get(1).copied().unwrap_or(1)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.addition.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.addition.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[e as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `x ↦ x^(p^e)`.
    pub fn frobenius(&self, a: u32, e: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(e % self.m))
    }

    /// The element `c·1` for an integer `c`.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl CoordinateRing for FiniteField {
    fn order(&self) -> u32 {
        self.q
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        FiniteField::add(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        FiniteField::neg(self, a)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        FiniteField::mul(self, a, b)
    }
}

pub(crate) fn digits(mut a: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(a % p);
        a /= p;
    }
    out
}

pub(crate) fn from_digits(ds: impl DoubleEndedIterator<Item = u32>, p: u32) -> u32 {
    ds.rev().fold(0, |acc, d| acc * p + d)
}

fn format_poly(f: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => c.to_string(),
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// An automorphism `x ↦ x^(p^e)` of a finite field.
#[derive(Clone, Debug)]
pub struct FieldAutomorphism {
    field: FiniteField,
    exponent: u32,
    table: Arc<Vec<u32>>,
}

impl FieldAutomorphism {
    pub fn frobenius(field: &FiniteField, exponent: u32) -> Self {
        let exponent = exponent % field.degree();
        let table = Arc::new(field.elements().map(|x| field.frobenius(x, exponent)).collect());
        FieldAutomorphism {
            field: field.clone(),
            exponent,
            table,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn order(&self) -> u32 {
        let m = self.field.degree();
        m / gcd(self.exponent, m)
    }

    pub fn is_identity(&self) -> bool {
        self.order() == 1
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An additive map `F → F`, stored as a table and validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveMap {
    table: Vec<u32>,
}

impl AdditiveMap {
    pub fn zero(field: &FiniteField) -> Self {
        AdditiveMap {
            table: vec![0; field.order() as usize],
        }
    }

    /// Accepts `table` iff it is additive, i.e. linear in the base-`p`
    /// coordinates: `l(x) = sum_i x_i l(p^i)`.
    pub fn from_table(field: &FiniteField, table: Vec<u32>) -> Result<Self> {
        let q = field.order();
        if table.len() != q as usize || table.iter().any(|&v| v >= q) {
            return Err(Error::Algebra(format!(
                "additive map needs {q} entries below {q}"
            )));
        }
        let basis: Vec<u32> = (0..field.degree())
            .map(|i| table[field.p().pow(i) as usize])
            .collect();
        for x in field.elements() {
            let mut expect = 0;
            for (i, d) in digits(x, field.p(), field.degree() as usize).into_iter().enumerate() {
                for _ in 0..d {
                    expect = field.add(expect, basis[i]);
                }
            }
            if table[x as usize] != expect {
                let (a, b) = split_witness(field, x);
                return Err(Error::Algebra(format!(
                    "map is not additive: l({a}+{b}) != l({a})+l({b})"
                )));
            }
        }
        Ok(AdditiveMap { table })
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }
}

fn split_witness(field: &FiniteField, x: u32) -> (u32, u32) {
    // x = (x - 1) + 1 in the prime-field direction of its lowest nonzero digit
    let p = field.p();
    let mut place = 1;
    while (x / place) % p == 0 {
        place *= p;
    }
    (field.sub(x, place), place)
}

/// `f(t, u) = t·u − (1/3)·t³ + l(t)`.
pub fn field_eval_f(field: &FiniteField, t: u32, u: u32, l: &AdditiveMap) -> Result<u32> {
    if field.p() == 3 {
        return Err(Error::Algebra("f(t,u) needs 1/3; characteristic is 3".into()));
    }
    let third = field.inv(field.from_int(3)).expect("3 is invertible");
    let cube = field.mul(field.mul(t, t), t);
    let tu = field.mul(t, u);
    Ok(field.add(field.sub(tu, field.mul(third, cube)), l.apply(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_from_explicit_modulus() {
        let f = FiniteField::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.order(), 4);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn gf5_inverse_of_three() {
        let f = FiniteField::new(5, 1, None).unwrap();
        assert_eq!(f.inv(3), Some(2));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let err = FiniteField::new(2, 2, Some(&[1, 0, 1])).unwrap_err();
        assert!(err.to_string().contains("reducible"), "{err}");
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert!(FiniteField::new(6, 1, None).is_err());
        assert!(FiniteField::of_order(6).is_err());
    }

    #[test]
    fn default_moduli_are_least_irreducible() {
        assert_eq!(FiniteField::of_order(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::of_order(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::of_order(4).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 128, 243, 256] {
            let f = FiniteField::of_order(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, q - 1, "q={q}");
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 128, 243, 256] {
            let f = FiniteField::of_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.pow(f.add(a, b), f.p() as u64),
                        f.add(f.pow(a, f.p() as u64), f.pow(b, f.p() as u64))
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for q in [4, 8, 9, 25] {
            let f = FiniteField::of_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn eval_f_examples() {
        let gf5 = FiniteField::prime(5).unwrap();
        let l = AdditiveMap::zero(&gf5);
        assert_eq!(field_eval_f(&gf5, 1, 1, &l).unwrap(), 4);
        for u in 0..5 {
            assert_eq!(field_eval_f(&gf5, 0, u, &l).unwrap(), 0);
        }
        let gf11 = FiniteField::prime(11).unwrap();
        assert_eq!(field_eval_f(&gf11, 1, 0, &AdditiveMap::zero(&gf11)).unwrap(), 7);
        let gf9 = FiniteField::of_order(9).unwrap();
        assert!(field_eval_f(&gf9, 1, 1, &AdditiveMap::zero(&gf9)).is_err());
    }

    #[test]
    fn eval_f_zero_map_properties() {
        for q in [2, 4, 5, 7, 8, 11, 13, 16, 25] {
            let f = FiniteField::of_order(q).unwrap();
            let l = AdditiveMap::zero(&f);
            let third = f.inv(f.from_int(3)).unwrap();
            for t in f.elements() {
                let cube = f.mul(f.mul(t, t), t);
                assert_eq!(field_eval_f(&f, t, 0, &l).unwrap(), f.neg(f.mul(third, cube)));
                for u in f.elements() {
                    for v in f.elements() {
                        // f(t, u + v) = f(t, u) + f(t, v) - f(t, 0)
                        let lhs = field_eval_f(&f, t, f.add(u, v), &l).unwrap();
                        let rhs = f.sub(
                            f.add(field_eval_f(&f, t, u, &l).unwrap(), field_eval_f(&f, t, v, &l).unwrap()),
                            field_eval_f(&f, t, 0, &l).unwrap(),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn additive_map_validation() {
        let f = FiniteField::of_order(25).unwrap();
        let frob: Vec<u32> = f.elements().map(|x| f.frobenius(x, 1)).collect();
        assert!(AdditiveMap::from_table(&f, frob).is_ok());
        let square: Vec<u32> = f.elements().map(|x| f.mul(x, x)).collect();
        assert!(AdditiveMap::from_table(&f, square).is_err());
    }

    #[test]
    fn automorphism_orders() {
        let f = FiniteField::of_order(8).unwrap();
        let a = FieldAutomorphism::frobenius(&f, 1);
        assert_eq!(a.order(), 3);
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(a.apply(f.mul(x, y)), f.mul(a.apply(x), a.apply(y)));
                assert_eq!(a.apply(f.add(x, y)), f.add(a.apply(x), a.apply(y)));
            }
        }
        assert!(FieldAutomorphism::frobenius(&FiniteField::prime(2).unwrap(), 1).is_identity());
        assert_eq!(FieldAutomorphism::frobenius(&FiniteField::of_order(64).unwrap(), 2).order(), 3);
    }
}
