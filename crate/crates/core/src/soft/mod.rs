//! The four coset conditions defining a soft triple, their consequences,
//! and recovery of `M` from `A` and `B`.
//!
//! For subgroups `A, B, M` of `G` with `k = |A ∩ B|` and `n = |A| / k`:
//!
//! 1. `|A| = |B| = |M| = nk` and `|G| = n³k`;
//! 2. `AM` and `BM` are subgroups (of order `n²k`);
//! 3. `AMB = G`;
//! 4. `AB ∩ BA = A ∪ B`.

mod checks;

pub use checks::{
    corollary_checks, lemma_checks, quadruple_corollary_checks, super_noncommutativity_check,
    Clause, ScanReport, DEFAULT_PAIR_BUDGET,
};

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::group::{product_set, Elem, Group, Subgroup};
use crate::{Error, Result};

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Elements exhibiting a failure, in the order described by `detail`.
    pub witness: Vec<Elem>,
}

/// Per-condition results in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    pub n: usize,
    pub k: usize,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, k = {}", self.n, self.k)?;
        for c in &self.checks {
            if c.passed {
                writeln!(f, "{}: PASS", c.name)?;
            } else {
                writeln!(f, "{}: FAIL ({}) witness {:?}", c.name, c.detail, c.witness)?;
            }
        }
        Ok(())
    }
}

pub const ORDERS: &str = "orders";
pub const PRODUCTS: &str = "AM and BM subgroups";
pub const FACTORIZATION: &str = "AMB = G";
pub const INTERSECTION: &str = "AB n BA = A u B";

/// A verified soft triple.
#[derive(Clone, Debug)]
pub struct SoftTriple {
    group: Group,
    a: Subgroup,
    b: Subgroup,
    m: Subgroup,
    am: Subgroup,
    bm: Subgroup,
    n: usize,
    k: usize,
    report: ConditionReport,
}

fn first_outside(set: &FixedBitSet, allowed: &FixedBitSet) -> Option<Elem> {
    set.difference(allowed).next().map(|x| x as Elem)
}

/// Finds `(x, y)` with `x ∈ X`, `y ∈ Y` and `xy = target`.
pub(crate) fn factor(g: &Group, xs: &Subgroup, ys: &Subgroup, target: Elem) -> Option<(Elem, Elem)> {
    xs.elements().find_map(|x| {
        let y = g.mul(g.inv(x), target);
        ys.contains(y).then_some((x, y))
    })
}

/// Evaluates the four conditions exhaustively. Never fails for
/// mathematical reasons; only the product-set budget can refuse.
pub fn check_conditions(
    g: &Group,
    a: &Subgroup,
    b: &Subgroup,
    m: &Subgroup,
) -> Result<ConditionReport> {
    for (name, s) in [("A", a), ("B", b), ("M", m)] {
        if s.group() != g {
            return Err(Error::InvalidInput(format!("{name} is not a subgroup of the given group")));
        }
    }
    let k = a.intersection(b).order();
    let n = a.order() / k;
    let mut checks = Vec::with_capacity(4);

    let nk = n * k;
    let mut orders = ConditionCheck {
        name: ORDERS,
        passed: true,
        detail: String::new(),
        witness: Vec::new(),
    };
    if n < 2 {
        orders.passed = false;
        orders.detail = format!("n = {n} < 2");
    } else if b.order() != nk || m.order() != nk {
        orders.passed = false;
        orders.detail = format!(
            "|A| = {}, |B| = {}, |M| = {}, expected {nk}",
            a.order(),
            b.order(),
            m.order()
        );
    } else if g.order() != n * n * n * k {
        orders.passed = false;
        orders.detail = format!("|G| = {} but n^3 k = {}", g.order(), n * n * n * k);
    }
    checks.push(orders);

    let am = product_set(g, a.members(), m.members())?;
    let ma = product_set(g, m.members(), a.members())?;
    let bm = product_set(g, b.members(), m.members())?;
    let mb = product_set(g, m.members(), b.members())?;
    let mut products = ConditionCheck {
        name: PRODUCTS,
        passed: true,
        detail: String::new(),
        witness: Vec::new(),
    };
    let target = n * n * k;
    for (label, xy, yx) in [("AM", &am, &ma), ("BM", &bm, &mb)] {
        if !products.passed {
            break;
        }
        if let Some(x) = first_outside(xy, yx).or_else(|| first_outside(yx, xy)) {
            products.passed = false;
            products.detail = format!("{label} is not a subgroup: {x} lies in exactly one of {label}, its reverse");
            products.witness = vec![x];
        } else if xy.count_ones(..) != target {
            products.passed = false;
            products.detail = format!("|{label}| = {}, expected {target}", xy.count_ones(..));
        }
    }
    checks.push(products);

    let amb = product_set(g, &am, b.members())?;
    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    let mut factorization = ConditionCheck {
        name: FACTORIZATION,
        passed: true,
        detail: String::new(),
        witness: Vec::new(),
    };
    if let Some(x) = first_outside(&all, &amb) {
        factorization.passed = false;
        factorization.detail = format!("{x} is not in AMB");
        factorization.witness = vec![x];
    }
    checks.push(factorization);

    let ab = product_set(g, a.members(), b.members())?;
    let ba = product_set(g, b.members(), a.members())?;
    let both = &ab & &ba;
    let union = a.members() | b.members();
    let mut intersection = ConditionCheck {
        name: INTERSECTION,
        passed: true,
        detail: String::new(),
        witness: Vec::new(),
    };
    if let Some(x) = first_outside(&both, &union) {
        let (a1, b1) = factor(g, a, b, x).expect("x in AB");
        let (b2, a2) = factor(g, b, a, x).expect("x in BA");
        intersection.passed = false;
        intersection.detail = format!("{x} = {a1}*{b1} = {b2}*{a2} lies in AB n BA outside A u B");
        intersection.witness = vec![x, a1, b1, b2, a2];
    } else if let Some(x) = first_outside(&union, &both) {
        intersection.passed = false;
        intersection.detail = format!("{x} lies in A u B but not in AB n BA");
        intersection.witness = vec![x];
    }
    checks.push(intersection);

    Ok(ConditionReport { n, k, checks })
}

/// Verifies the four conditions; on success returns the triple.
pub fn verify_soft_triple(g: &Group, a: &Subgroup, b: &Subgroup, m: &Subgroup) -> Result<SoftTriple> {
    let report = check_conditions(g, a, b, m)?;
    if !report.passed() {
        return Err(Error::NotSoft(Box::new(report)));
    }
    let am = Subgroup::from_set(g, product_set(g, a.members(), m.members())?)?;
    let bm = Subgroup::from_set(g, product_set(g, b.members(), m.members())?)?;
    Ok(SoftTriple {
        group: g.clone(),
        a: a.clone(),
        b: b.clone(),
        m: m.clone(),
        am,
        bm,
        n: report.n,
        k: report.k,
        report,
    })
}

/// `G ∖ X(Y∖X)X` for subgroups `X, Y`.
pub(crate) fn complement_of_double_product(g: &Group, x: &Subgroup, y: &Subgroup) -> Result<FixedBitSet> {
    let mut y_minus_x = y.members().clone();
    y_minus_x.difference_with(x.members());
    let inner = product_set(g, x.members(), &y_minus_x)?;
    let outer = product_set(g, &inner, x.members())?;
    let mut out = FixedBitSet::with_capacity(g.order());
    out.insert_range(..);
    out.difference_with(&outer);
    Ok(out)
}

/// Recovers `M` as `(G ∖ A(B∖A)A) ∩ (G ∖ B(A∖B)B)` and verifies the
/// completed triple.
pub fn derive_m(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<SoftTriple> {
    let join = a.join(b)?;
    if !join.is_whole() {
        return Err(Error::Construction(format!(
            "A and B generate a subgroup of order {} < {}",
            join.order(),
            g.order()
        )));
    }
    let am = complement_of_double_product(g, a, b)?;
    let bm = complement_of_double_product(g, b, a)?;
    let m = &am & &bm;
    if m.count_ones(..) == 0 {
        return Err(Error::Construction("no soft completion: the candidate set for M is empty".into()));
    }
    let m = Subgroup::from_set(g, m).map_err(|e| match e {
        Error::NotSubgroup { a, b } => Error::Construction(format!(
            "no soft completion: the candidate set for M is not a subgroup ({a} * {b} leaves it)"
        )),
        other => other,
    })?;
    verify_soft_triple(g, a, b, &m)
}

impl SoftTriple {
    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn a(&self) -> &Subgroup {
        &self.a
    }
    pub fn b(&self) -> &Subgroup {
        &self.b
    }
    pub fn m(&self) -> &Subgroup {
        &self.m
    }
    pub fn am(&self) -> &Subgroup {
        &self.am
    }
    pub fn bm(&self) -> &Subgroup {
        &self.bm
    }
    /// Plane order.
    pub fn n(&self) -> usize {
        self.n
    }
    /// `|A ∩ B|`.
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    /// The triple with `A` and `B` exchanged.
    pub fn dual(&self) -> Result<SoftTriple> {
        verify_soft_triple(&self.group, &self.b, &self.a, &self.m)
    }

    /// The triple conjugated by `x`.
    pub fn conjugate(&self, x: Elem) -> Result<SoftTriple> {
        verify_soft_triple(
            &self.group,
            &self.a.conjugate(x),
            &self.b.conjugate(x),
            &self.m.conjugate(x),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    /// D8 as r^i s^j: A = ⟨s⟩, B = ⟨rs⟩ two non-commuting reflections and
    /// M = ⟨r²⟩ the center.
    fn d8_triple() -> (Group, Subgroup, Subgroup, Subgroup) {
        let g = catalog::dihedral(8).unwrap();
        let a = Subgroup::generated(&g, &[4]).unwrap();
        let b = Subgroup::generated(&g, &[5]).unwrap();
        let m = Subgroup::generated(&g, &[2]).unwrap();
        (g, a, b, m)
    }

    #[test]
    fn dihedral_eight_is_soft() {
        let (g, a, b, m) = d8_triple();
        let t = verify_soft_triple(&g, &a, &b, &m).unwrap();
        assert_eq!((t.n(), t.k()), (2, 1));
        assert_eq!(t.am().order(), 4);
        assert!(t.dual().is_ok());
    }

    #[test]
    fn abelian_fails_intersection() {
        let g = catalog::elementary_abelian(2, 3).unwrap();
        let a = Subgroup::generated(&g, &[1]).unwrap();
        let b = Subgroup::generated(&g, &[2]).unwrap();
        let m = Subgroup::generated(&g, &[4]).unwrap();
        let r = check_conditions(&g, &a, &b, &m).unwrap();
        let fail = r.first_failure().unwrap();
        assert_eq!(fail.name, INTERSECTION);
        // the witness re-checks: x = a1 b1 = b2 a2 outside A u B
        let w = &fail.witness;
        assert_eq!(g.mul(w[1], w[2]), w[0]);
        assert_eq!(g.mul(w[3], w[4]), w[0]);
        assert!(!a.contains(w[0]) && !b.contains(w[0]));
    }

    #[test]
    fn derive_m_recovers_center() {
        let (g, a, b, m) = d8_triple();
        let t = derive_m(&g, &a, &b).unwrap();
        assert_eq!(t.m(), &m);
    }

    #[test]
    fn derive_m_rejects_equal_subgroups() {
        let g = catalog::dihedral(8).unwrap();
        assert!(derive_m(&g, &g.whole(), &g.whole()).is_err());
    }

    #[test]
    fn order_mismatch_reported() {
        let (g, a, b, _) = d8_triple();
        let m = Subgroup::generated(&g, &[1]).unwrap();
        let r = check_conditions(&g, &a, &b, &m).unwrap();
        assert_eq!(r.first_failure().unwrap().name, ORDERS);
    }
}
