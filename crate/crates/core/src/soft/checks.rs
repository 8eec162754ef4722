use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{complement_of_double_product, factor, SoftTriple};
use crate::group::{product_set, Elem, Group, Subgroup};
use crate::Result;

/// One named identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Clause {
    pub fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Clause {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{}: {status}", self.name)
        } else {
            write!(f, "{}: {status} ({})", self.name, self.detail)
        }
    }
}

fn set_of(g: &Group, elems: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(g.order());
    for x in elems {
        s.insert(x as usize);
    }
    s
}

fn first_diff(x: &FixedBitSet, y: &FixedBitSet) -> Option<usize> {
    x.symmetric_difference(y).next()
}

fn eq_clause(name: &'static str, x: &FixedBitSet, y: &FixedBitSet) -> Clause {
    match first_diff(x, y) {
        None => Clause::new(name, true, ""),
        Some(e) => Clause::new(name, false, format!("element {e} lies on one side only")),
    }
}

/// The consequences of the four conditions, evaluated on arbitrary
/// subgroups. Products `AM`, `BM` are taken as sets.
pub fn quadruple_corollary_checks(
    g: &Group,
    a: &Subgroup,
    b: &Subgroup,
    m: &Subgroup,
) -> Result<Vec<Clause>> {
    let am = product_set(g, a.members(), m.members())?;
    let bm = product_set(g, b.members(), m.members())?;
    let ab = a.members() & b.members();
    let mut out = Vec::new();

    let a_m = a.members() & m.members();
    let b_m = b.members() & m.members();
    let c1 = first_diff(&a_m, &ab).or_else(|| first_diff(&b_m, &ab));
    out.push(Clause::new(
        "A n M = A n B = B n M",
        c1.is_none(),
        c1.map(|e| format!("element {e}")).unwrap_or_default(),
    ));

    let am_b = &am & b.members();
    let bm_a = &bm & a.members();
    let c2 = first_diff(&am_b, &ab).or_else(|| first_diff(&bm_a, &ab));
    out.push(Clause::new(
        "AM n B = A n B = BM n A",
        c2.is_none(),
        c2.map(|e| format!("element {e}")).unwrap_or_default(),
    ));

    out.push(eq_clause("AM n BM = M", &(&am & &bm), m.members()));

    let am_c = complement_of_double_product(g, a, b)?;
    let bm_c = complement_of_double_product(g, b, a)?;
    let c4 = first_diff(&am, &am_c).or_else(|| first_diff(&bm, &bm_c));
    out.push(Clause::new(
        "AM = G - A(B-A)A and BM = G - B(A-B)B",
        c4.is_none(),
        c4.map(|e| format!("element {e}")).unwrap_or_default(),
    ));

    let abs = product_set(g, a.members(), b.members())?;
    let abab = product_set(g, &abs, &abs)?;
    let all = set_of(g, g.elements());
    out.push(eq_clause("ABAB = G", &abab, &all));
    Ok(out)
}

pub fn corollary_checks(t: &SoftTriple) -> Result<Vec<Clause>> {
    quadruple_corollary_checks(t.group(), t.a(), t.b(), t.m())
}

/// Result of a pair scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub name: &'static str,
    pub pairs: usize,
    pub exhaustive: bool,
    /// Violating elements, when one was found.
    pub witness: Option<Vec<Elem>>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.exhaustive { "exhaustive" } else { "sampled" };
        match &self.witness {
            None => write!(f, "{}: PASS ({} pairs, {mode})", self.name, self.pairs),
            Some(w) => write!(f, "{}: FAIL witness {:?}", self.name, w),
        }
    }
}

/// Pairs from `xs × ys`: all of them when there are at most `budget`,
/// otherwise `budget` pairs from a fixed-seed generator.
fn pairs(xs: &[Elem], ys: &[Elem], budget: usize) -> (Vec<(Elem, Elem)>, bool) {
    if xs.len() * ys.len() <= budget {
        let v = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
        return (v, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(crate::group::CERTIFICATE_SEED);
    let v = (0..budget)
        .map(|_| (xs[rng.gen_range(0..xs.len())], ys[rng.gen_range(0..ys.len())]))
        .collect();
    (v, false)
}

pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

/// For `a ∈ A∖B`, `b ∈ B∖A` checks `ab ∉ BA`; the witness on failure is
/// `(a, b, b', a')` with `ab = b'a'`. A passing exhaustive scan also
/// re-derives `AB ∩ BA ⊆ A ∪ B`, which is checked directly.
pub fn super_noncommutativity_check(
    g: &Group,
    a: &Subgroup,
    b: &Subgroup,
    budget: usize,
) -> Result<Vec<ScanReport>> {
    let a_only: Vec<Elem> = a.elements().filter(|&x| !b.contains(x)).collect();
    let b_only: Vec<Elem> = b.elements().filter(|&x| !a.contains(x)).collect();
    let ba = product_set(g, b.members(), a.members())?;
    let (ps, exhaustive) = pairs(&a_only, &b_only, budget);
    let mut witness = None;
    for &(x, y) in &ps {
        let p = g.mul(x, y);
        if ba.contains(p as usize) {
            let (b2, a2) = factor(g, b, a, p).expect("p in BA");
            witness = Some(vec![x, y, b2, a2]);
            break;
        }
    }
    let mut out = vec![ScanReport {
        name: "ab not in BA for a in A-B, b in B-A",
        pairs: ps.len(),
        exhaustive,
        witness: witness.clone(),
    }];
    if exhaustive {
        let ab = product_set(g, a.members(), b.members())?;
        let inter = &ab & &ba;
        let union = a.members() | b.members();
        let derived_ok = inter.is_subset(&union);
        // The scan covers every product outside A u B, so both must agree.
        let w = if derived_ok == witness.is_none() {
            None
        } else {
            Some(inter.difference(&union).map(|e| e as Elem).take(1).collect())
        };
        out.push(ScanReport {
            name: "scan agrees with AB n BA = A u B",
            pairs: ps.len(),
            exhaustive,
            witness: w,
        });
    }
    Ok(out)
}

/// (a) `B^a ∩ B ⊆ A ∩ B` for `a ∈ A∖B`; (b) `[a,b] ∈ AM∖A` implies
/// `ab ∉ BA`.
pub fn lemma_checks(t: &SoftTriple, budget: usize) -> Result<Vec<ScanReport>> {
    let g = t.group();
    let (a, b) = (t.a(), t.b());
    let ab = a.intersection(b);
    let a_only: Vec<Elem> = a.elements().filter(|&x| !b.contains(x)).collect();
    let b_all = b.to_vec();

    let (ps, exhaustive) = pairs(&a_only, &b_all, budget);
    let mut witness = None;
    for &(x, y) in &ps {
        // z ranges over B^x
        let z = g.conj(y, x);
        if b.contains(z) && !ab.contains(z) {
            witness = Some(vec![x, y, z]);
            break;
        }
    }
    let mut out = vec![ScanReport {
        name: "B^a n B <= A n B for a in A-B",
        pairs: ps.len(),
        exhaustive,
        witness,
    }];

    let a_all = a.to_vec();
    let (ps, exhaustive) = pairs(&a_all, &b_all, budget);
    let ba = product_set(g, b.members(), a.members())?;
    let mut witness = None;
    for &(x, y) in &ps {
        let c = g.commutator(x, y);
        if t.am().contains(c) && !a.contains(c) && ba.contains(g.mul(x, y) as usize) {
            witness = Some(vec![x, y, c]);
            break;
        }
    }
    out.push(ScanReport {
        name: "[a,b] in AM-A implies ab not in BA",
        pairs: ps.len(),
        exhaustive,
        witness,
    });
    Ok(out)
}
