use proptest::prelude::*;

use softplane::algebra::FiniteField;
use softplane::converse::two_squares;

const ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

// Sum of two squares iff every prime 3 mod 4 divides to an even power.
fn fermat_criterion(mut n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if p % 4 == 3 && e % 2 == 1 {
            return false;
        }
        p += 1;
    }
    n % 4 != 3
}

proptest! {
    #[test]
    fn field_laws(i in 0..ORDERS.len(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = FiniteField::of_order(ORDERS[i]).unwrap();
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        match f.inv(a) {
            Some(x) => prop_assert_eq!(f.mul(a, x), 1),
            None => prop_assert_eq!(a, 0),
        }
        prop_assert_eq!(f.pow(a, q as u64), a);
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(i in 0..ORDERS.len(), a in 0u32..1000, b in 0u32..1000) {
        let f = FiniteField::of_order(ORDERS[i]).unwrap();
        let (a, b) = (a % f.order(), b % f.order());
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
    }

    #[test]
    fn two_squares_matches_fermat(n in 1u64..200_000) {
        let found = two_squares(n);
        prop_assert_eq!(found.is_some(), fermat_criterion(n));
        if let Some((a, b)) = found {
            prop_assert!(a <= b);
            prop_assert_eq!(a * a + b * b, n);
        }
    }
}
