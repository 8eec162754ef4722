use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::{coset_system, Elem, Group, Side, Subgroup};
use crate::limits;
use crate::{Error, Result};

/// Elements of `within` commuting with every element of `xs`.
pub fn centralizer(within: &Subgroup, xs: &[Elem]) -> Subgroup {
    let g = within.group();
    let mut members = FixedBitSet::with_capacity(g.order());
    for y in within.elements() {
        if xs.iter().all(|&x| g.mul(x, y) == g.mul(y, x)) {
            members.insert(y as usize);
        }
    }
    Subgroup::from_set(g, members).expect("centralizers are subgroups")
}

pub fn center(g: &Group) -> Subgroup {
    centralizer(&g.whole(), g.generators())
}

/// `N_within(h)`.
pub fn normalizer(within: &Subgroup, h: &Subgroup) -> Subgroup {
    let g = within.group();
    let mut members = FixedBitSet::with_capacity(g.order());
    for y in within.elements() {
        if h.normalized_by(y) {
            members.insert(y as usize);
        }
    }
    Subgroup::from_set(g, members).expect("normalizers are subgroups")
}

/// The least subgroup of `within` containing `xs` and normalized by `within`.
pub fn normal_closure(within: &Subgroup, xs: &[Elem]) -> Result<Subgroup> {
    let g = within.group();
    let mut s = Subgroup::generated(g, xs)?;
    'grow: loop {
        for &h in s.generators() {
            for &t in within.generators() {
                let c = g.conj(h, t);
                if !s.contains(c) {
                    let mut gens = s.generators().to_vec();
                    gens.push(c);
                    s = Subgroup::generated(g, &gens)?;
                    continue 'grow;
                }
            }
        }
        return Ok(s);
    }
}

/// `[H, K]`: the normal closure in `⟨H, K⟩` of the commutators of
/// generators.
pub fn commutator_subgroup(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    let g = h.group();
    let mut comms = Vec::new();
    for &a in h.generators() {
        for &b in k.generators() {
            let c = g.commutator(a, b);
            if c != 0 {
                comms.push(c);
            }
        }
    }
    let hk = h.join(k)?;
    normal_closure(&hk, &comms)
}

pub fn derived_series(g: &Group) -> Result<Vec<Subgroup>> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(last, last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// `γ₁ = G`, `γ_{i+1} = [γ_i, G]`, until it stabilizes.
pub fn lower_central_series(g: &Group) -> Result<Vec<Subgroup>> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(last, &whole)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub center: Subgroup,
    pub derived: Vec<Subgroup>,
    pub lower_central: Vec<Subgroup>,
    /// Length of the lower central series when it reaches the trivial group.
    pub nilpotency_class: Option<usize>,
    pub solvable: bool,
}

pub fn center_and_series(g: &Group) -> Result<SeriesReport> {
    limits::check_elements("series computation", g.order())?;
    let derived = derived_series(g)?;
    let lower_central = lower_central_series(g)?;
    let nilpotency_class = lower_central
        .last()
        .filter(|s| s.is_trivial())
        .map(|_| lower_central.len() - 1);
    Ok(SeriesReport {
        center: center(g),
        solvable: derived.last().unwrap().is_trivial(),
        derived,
        lower_central,
        nilpotency_class,
    })
}

pub fn element_order_histogram(g: &Group) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for x in g.elements() {
        *h.entry(g.element_order(x)).or_insert(0) += 1;
    }
    h
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariants of `G/G'` as prime powers in increasing order.
pub fn abelianization_invariants(g: &Group) -> Result<Vec<u64>> {
    let d = commutator_subgroup(&g.whole(), &g.whole())?;
    let cosets = coset_system(&d, Side::Right)?;
    let order_of = |x: Elem| {
        let mut y = x;
        let mut k = 1u64;
        while !d.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = cosets.reps().iter().map(|&x| order_of(x)).collect();
    let mut out = Vec::new();
    for p in prime_factors(cosets.len() as u64) {
        // c[i] = log_p #{cosets of order dividing p^i}
        let mut logs = vec![0u32];
        let mut pi = 1u64;
        loop {
            pi *= p;
            let count = orders.iter().filter(|&&o| pi % o == 0).count() as u64;
            let mut e = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                e += 1;
            }
            logs.push(e);
            if count == p_part(cosets.len() as u64, p) {
                break;
            }
        }
        // factors of order ≥ p^i number logs[i] - logs[i-1]
        let top = logs.len() - 1;
        for i in 1..=top {
            let at_least_i = logs[i] - logs[i - 1];
            let at_least_next = if i < top { logs[i + 1] - logs[i] } else { 0 };
            for _ in 0..(at_least_i - at_least_next) {
                out.push(p.pow(i as u32));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// A Sylow `p`-subgroup, grown from the trivial group by normalizer ascent.
pub fn sylow_subgroup(g: &Group, p: u64) -> Result<Subgroup> {
    let target = p_part(g.order() as u64, p) as usize;
    if target == 1 {
        return Err(Error::InvalidInput(format!("{p} does not divide {}", g.order())));
    }
    limits::check_elements("Sylow subgroup", g.order())?;
    let whole = g.whole();
    let mut s = g.trivial();
    while s.order() < target {
        let n = normalizer(&whole, &s);
        // N/S has an element of order p since p divides |N : S|.
        let x = n
            .elements()
            .find(|&x| !s.contains(x) && s.contains(g.pow(x, p)))
            .expect("Cauchy's theorem in N/S");
        let mut gens = s.generators().to_vec();
        gens.push(x);
        s = Subgroup::generated(g, &gens)?;
    }
    Ok(s)
}

/// The Frattini subgroup `G'G^p` of a `p`-group.
fn frattini(g: &Group, p: u64) -> Result<Subgroup> {
    let d = commutator_subgroup(&g.whole(), &g.whole())?;
    let mut gens = d.generators().to_vec();
    let mut s = d;
    for x in g.elements() {
        let y = g.pow(x, p);
        if !s.contains(y) {
            gens.push(y);
            s = Subgroup::generated(g, &gens)?;
        }
    }
    Ok(s)
}

/// All subgroups of index `p` of a `p`-group, as kernels of the nonzero
/// functionals on `G/Φ(G)`.
pub fn index_p_subgroups(g: &Group, p: u64) -> Result<Vec<Subgroup>> {
    if !g.is_p_group(p) || g.order() == 1 {
        return Err(Error::InvalidInput(format!(
            "group of order {} is not a nontrivial {p}-group",
            g.order()
        )));
    }
    limits::check_elements("index-p subgroups", g.order())?;
    let phi = frattini(g, p)?;
    let mut basis = Vec::new();
    let mut span = phi.clone();
    for x in g.elements() {
        if !span.contains(x) {
            basis.push(x);
            let mut gens = span.generators().to_vec();
            gens.push(x);
            span = Subgroup::generated(g, &gens)?;
        }
    }
    let r = basis.len();
    let mut out = Vec::new();
    // Functionals normalized so that the first nonzero coordinate is 1.
    for lead in 0..r {
        let free = r - lead - 1;
        for code in 0..(p as usize).pow(free as u32) {
            let mut c = vec![0u32; r];
            c[lead] = 1;
            let mut rest = code;
            for slot in c.iter_mut().skip(lead + 1) {
                *slot = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            let mut gens = phi.generators().to_vec();
            for (i, &b) in basis.iter().enumerate() {
                if i == lead {
                    continue;
                }
                // e_i - c_i e_lead
                let back = g.pow(g.inv(basis[lead]), c[i] as u64);
                gens.push(g.mul(b, back));
            }
            let h = Subgroup::generated(g, &gens)?;
            debug_assert_eq!(h.order() * p as usize, g.order());
            out.push(h);
        }
    }
    Ok(out)
}
