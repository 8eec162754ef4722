use std::collections::{BTreeMap, BTreeSet};
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Mutex;

use rayon::prelude::*;

use super::feasibility::order_feasibility;
use crate::group::{all_subgroups, conjugacy_class_reps, canonical_conjugate, product_set, Elem, Group, Subgroup};
use crate::soft::{derive_m, verify_soft_triple, SoftTriple};
use crate::{Error, Result};

/// Default cap on the order of a searched group.
pub const SEARCH_MAX_ORDER: usize = 1024;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub n: Option<usize>,
    pub k: Option<usize>,
    /// Reject pairs early by the conjugate-intersection lemma and a direct
    /// condition-(4) witness before deriving `M`.
    pub prune: bool,
    pub workers: Option<usize>,
    /// Resumable log of finished `A` candidates and found triples.
    pub progress: Option<PathBuf>,
    pub max_order: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            n: None,
            k: None,
            prune: true,
            workers: None,
            progress: None,
            max_order: SEARCH_MAX_ORDER,
        }
    }
}

/// `(A, B)` up to simultaneous conjugation: the least pair of sorted
/// member lists over all conjugates.
pub type CanonicalPair = (Vec<Elem>, Vec<Elem>);

#[derive(Clone, Debug)]
pub struct SearchReport {
    /// `(n, k)` pairs searched.
    pub factorizations: Vec<(usize, usize)>,
    /// Found triples keyed by canonical form.
    pub triples: BTreeMap<CanonicalPair, SoftTriple>,
    pub a_candidates: usize,
    pub resumed: usize,
    pub pairs_tested: usize,
    pub pruned: usize,
}

pub fn canonical_pair(a: &Subgroup, b: &Subgroup) -> CanonicalPair {
    let g = a.group();
    let conj = |h: &Subgroup, x: Elem| {
        let mut v: Vec<Elem> = h.elements().map(|y| g.conj(y, x)).collect();
        v.sort_unstable();
        v
    };
    g.elements()
        .map(|x| (conj(a, x), conj(b, x)))
        .min()
        .expect("nonempty group")
}

/// `B^a ∩ B ≤ A ∩ B` for every `a ∈ A ∖ B`; holds in every soft triple.
fn conjugate_intersection_ok(g: &Group, a: &Subgroup, b: &Subgroup) -> bool {
    let ab = a.intersection(b);
    a.elements().filter(|&x| !b.contains(x)).all(|x| {
        b.elements()
            .filter(|&y| b.contains(g.conj(y, x)))
            .all(|y| ab.contains(g.conj(y, x)))
    })
}

/// `AB ∩ BA ⊆ A ∪ B`.
fn double_product_ok(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<bool> {
    let mut ab = product_set(g, a.members(), b.members())?;
    let ba = product_set(g, b.members(), a.members())?;
    ab.intersect_with(&ba);
    let mut union = a.members().clone();
    union.union_with(b.members());
    Ok(ab.is_subset(&union))
}

fn members(line: &str, g: &Group, lineno: usize) -> Result<Subgroup> {
    let elems: Vec<Elem> = line
        .split_whitespace()
        .map(|t| t.parse::<Elem>().map_err(|_| Error::parse(lineno, format!("bad element {t:?}"))))
        .collect::<Result<_>>()?;
    if elems.iter().any(|&e| e as usize >= g.order()) {
        return Err(Error::parse(lineno, "element out of range"));
    }
    Subgroup::from_elements(g, elems)
}

fn join(v: &[Elem]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

struct Progress {
    done: BTreeSet<Vec<Elem>>,
    found: Vec<SoftTriple>,
    file: Option<Mutex<std::fs::File>>,
}

impl Progress {
    fn open(g: &Group, path: Option<&PathBuf>) -> Result<Self> {
        let mut p = Progress {
            done: BTreeSet::new(),
            found: Vec::new(),
            file: None,
        };
        let Some(path) = path else { return Ok(p) };
        let header = format!("SEARCH {}", g.order());
        if let Ok(text) = std::fs::read_to_string(path) {
            let mut lines = text.lines().enumerate();
            match lines.next() {
                Some((_, h)) if h.trim() == header => {}
                Some((_, h)) => {
                    return Err(Error::parse(1, format!("progress header {h:?}, expected {header:?}")))
                }
                None => {}
            }
            for (i, line) in lines {
                let lineno = i + 1;
                if let Some(rest) = line.strip_prefix("A ") {
                    p.done.insert(members(rest, g, lineno)?.to_vec());
                } else if let Some(rest) = line.strip_prefix("T ") {
                    let parts: Vec<&str> = rest.split('|').collect();
                    if parts.len() != 3 {
                        return Err(Error::parse(lineno, "expected A | B | M"));
                    }
                    let a = members(parts[0], g, lineno)?;
                    let b = members(parts[1], g, lineno)?;
                    let m = members(parts[2], g, lineno)?;
                    p.found.push(verify_soft_triple(g, &a, &b, &m)?);
                } else if !line.trim().is_empty() {
                    return Err(Error::parse(lineno, format!("unrecognized line {line:?}")));
                }
            }
            if text.is_empty() {
                std::fs::write(path, format!("{header}\n"))?;
            }
        } else {
            std::fs::write(path, format!("{header}\n"))?;
        }
        p.file = Some(Mutex::new(OpenOptions::new().append(true).open(path)?));
        Ok(p)
    }

    fn record(&self, a: &Subgroup, found: &[SoftTriple]) -> Result<()> {
        let Some(f) = &self.file else { return Ok(()) };
        let mut text = String::new();
        for t in found {
            text += &format!(
                "T {} | {} | {}\n",
                join(&t.a().to_vec()),
                join(&t.b().to_vec()),
                join(&t.m().to_vec())
            );
        }
        text += &format!("A {}\n", join(&a.to_vec()));
        let mut f = f.lock().expect("progress lock");
        f.write_all(text.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}

struct Tally {
    found: Vec<SoftTriple>,
    tested: usize,
    pruned: usize,
}

fn search_a(g: &Group, a: &Subgroup, bs: &[Subgroup], k: usize, prune: bool) -> Result<Tally> {
    let mut t = Tally {
        found: Vec::new(),
        tested: 0,
        pruned: 0,
    };
    for b in bs {
        if a.intersection(b).order() != k {
            continue;
        }
        t.tested += 1;
        if prune && (!conjugate_intersection_ok(g, a, b) || !double_product_ok(g, a, b)?) {
            t.pruned += 1;
            continue;
        }
        match derive_m(g, a, b) {
            Ok(triple) => t.found.push(triple),
            Err(Error::Construction(_)) | Err(Error::NotSoft(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(t)
}

/// Exhaustive search for soft triples in a small group: for each
/// `|G| = n³k` passing the order filters, `A` runs over subgroups of order
/// `nk` up to conjugacy and `B` over all subgroups of order `nk` meeting
/// `A` in `k` elements; `M` is derived and the triple verified. Triples
/// are reported once per conjugacy class of `(A, B)`.
pub fn search_soft_triples(g: &Group, opts: &SearchOptions) -> Result<SearchReport> {
    if g.order() > opts.max_order {
        return Err(Error::budget("search group order", g.order(), opts.max_order));
    }
    let order = g.order();
    let mut factorizations = Vec::new();
    let mut n = 2;
    while n * n * n <= order {
        if order % (n * n * n) == 0 {
            let k = order / (n * n * n);
            if order_feasibility(n as u64)?.feasible()
                && opts.n.is_none_or(|x| x == n)
                && opts.k.is_none_or(|x| x == k)
            {
                factorizations.push((n, k));
            }
        }
        n += 1;
    }
    if factorizations.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no factorization |G| = {order} = n^3 k with n >= 2 passes the filters"
        )));
    }
    let progress = Progress::open(g, opts.progress.as_ref())?;
    let subs = all_subgroups(g)?;
    let mut report = SearchReport {
        factorizations: factorizations.clone(),
        triples: BTreeMap::new(),
        a_candidates: 0,
        resumed: 0,
        pairs_tested: 0,
        pruned: 0,
    };
    for t in &progress.found {
        report.triples.insert(canonical_pair(t.a(), t.b()), t.clone());
    }
    let run = || -> Result<Vec<Tally>> {
        let mut tallies = Vec::new();
        for &(n, k) in &factorizations {
            let bs: Vec<Subgroup> = subs.iter().filter(|h| h.order() == n * k).cloned().collect();
            let reps: Vec<Subgroup> = conjugacy_class_reps(&bs)
                .into_iter()
                .filter(|a| !progress.done.contains(&canonical_conjugate(a)))
                .collect();
            let part: Vec<Tally> = reps
                .par_iter()
                .map(|a| {
                    let t = search_a(g, a, &bs, k, opts.prune)?;
                    progress.record(a, &t.found)?;
                    Ok(t)
                })
                .collect::<Result<_>>()?;
            tallies.extend(part);
        }
        Ok(tallies)
    };
    let tallies = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    report.resumed = progress.done.len();
    for t in tallies {
        report.a_candidates += 1;
        report.pairs_tested += t.tested;
        report.pruned += t.pruned;
        for triple in t.found {
            let fresh = verify_soft_triple(g, triple.a(), triple.b(), triple.m())?;
            report.triples.entry(canonical_pair(fresh.a(), fresh.b())).or_insert(fresh);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn prune_keeps_every_soft_pair_of_order_27() {
        let g = crate::constructions::heisenberg(std::sync::Arc::new(
            crate::algebra::FiniteField::of_order(3).unwrap(),
        ))
        .unwrap()
        .group()
        .clone();
        let subs: Vec<Subgroup> = all_subgroups(&g).unwrap().into_iter().filter(|h| h.order() == 3).collect();
        for a in &subs {
            for b in &subs {
                if a != b && derive_m(&g, a, b).is_ok() {
                    assert!(conjugate_intersection_ok(&g, a, b));
                    assert!(double_product_ok(&g, a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn progress_resumes() {
        let g = catalog::dihedral(8).unwrap();
        let dir = std::env::temp_dir().join(format!("softplane-progress-{}", std::process::id()));
        let opts = SearchOptions {
            progress: Some(dir.clone()),
            ..SearchOptions::default()
        };
        let first = search_soft_triples(&g, &opts).unwrap();
        let second = search_soft_triples(&g, &opts).unwrap();
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(second.a_candidates, 0);
        assert!(second.resumed > 0);
        assert_eq!(
            first.triples.keys().collect::<Vec<_>>(),
            second.triples.keys().collect::<Vec<_>>()
        );
    }
}
