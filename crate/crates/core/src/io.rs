//! Text file formats.
//!
//! * `SEMIFIELD q p m` followed by the `q×q` multiplication table.
//! * `ADDITIVE q` followed by one line of `q` images.
//! * `GROUP n` followed by the `n×n` Cayley table, or `STRUCTURED <spec>`
//!   naming one of the built-in constructions.
//! * `TRIPLE <group file>` followed by `A:`, `B:` and `M:` member lists.
//! * `PLANE n [FLAG]` followed by the point lists of the `n²+n+1` lines.
//! * `COLLINEATIONS <points> <count>` followed by one point image list per
//!   collineation.
//!
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{AdditiveMap, FieldAutomorphism, FiniteField, SemifieldTable};
use crate::constructions::{extend_by_automorphism, Heisenberg, Likeable};
use crate::group::{Elem, Group, Subgroup};
use crate::plane::{Collineation, ProjectivePlane};
use crate::soft::SoftTriple;
use crate::{Error, Result};

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            Some((n, _)) => Err(Error::parse(n, "trailing content")),
            None => Ok(()),
        }
    }

    /// A header line `KEYWORD args...`.
    fn header(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        let (n, line) = self.next(keyword)?;
        let mut words = line.split_whitespace();
        if words.next() != Some(keyword) {
            return Err(Error::parse(n, format!("expected a `{keyword}` header")));
        }
        Ok((n, words.collect()))
    }

    fn numbers(&mut self, what: &str, expect: Option<usize>) -> Result<(usize, Vec<u64>)> {
        let (n, line) = self.next(what)?;
        let v = numbers(n, line.split_whitespace())?;
        if let Some(e) = expect {
            if v.len() != e {
                return Err(Error::parse(n, format!("{what}: expected {e} entries, found {}", v.len())));
            }
        }
        Ok((n, v))
    }
}

fn numbers<'a>(line: usize, words: impl Iterator<Item = &'a str>) -> Result<Vec<u64>> {
    words
        .map(|w| {
            w.parse::<u64>()
                .map_err(|_| Error::parse(line, format!("`{w}` is not a non-negative integer")))
        })
        .collect()
}

fn number(line: usize, word: Option<&&str>, what: &str) -> Result<u64> {
    let w = word.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    w.parse()
        .map_err(|_| Error::parse(line, format!("{what} `{w}` is not a non-negative integer")))
}

fn in_range(line: usize, x: u64, n: usize) -> Result<u32> {
    if (x as usize) < n {
        Ok(x as u32)
    } else {
        Err(Error::parse(line, format!("index {x} out of range 0..{n}")))
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_semifield(text: &str) -> Result<SemifieldTable> {
    let mut lines = Lines::new(text);
    let s = parse_semifield_lines(&mut lines)?;
    lines.finish()?;
    Ok(s)
}

fn parse_semifield_lines(lines: &mut Lines<'_>) -> Result<SemifieldTable> {
    let (n, args) = lines.header("SEMIFIELD")?;
    let q = number(n, args.first(), "order")?;
    let p = number(n, args.get(1), "characteristic")?;
    let m = number(n, args.get(2), "degree")?;
    if q > 1 << 16 {
        return Err(Error::parse(n, format!("order {q} too large")));
    }
    let mut mul = Vec::with_capacity((q * q) as usize);
    for _ in 0..q {
        let (l, row) = lines.numbers("table row", Some(q as usize))?;
        for x in row {
            mul.push(in_range(l, x, q as usize)?);
        }
    }
    SemifieldTable::from_table(q as u32, p as u32, m as u32, mul)
}

pub fn write_semifield(s: &SemifieldTable) -> String {
    let q = s.order() as usize;
    let mut out = format!("SEMIFIELD {} {} {}\n", q, s.p(), s.degree());
    for row in s.table().chunks(q) {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn parse_additive(text: &str, field: &FiniteField) -> Result<AdditiveMap> {
    let mut lines = Lines::new(text);
    let (n, args) = lines.header("ADDITIVE")?;
    let q = number(n, args.first(), "order")?;
    if q != field.order() as u64 {
        return Err(Error::parse(n, format!("map on {q} elements for a field of order {}", field.order())));
    }
    let (l, v) = lines.numbers("images", Some(q as usize))?;
    let table = v.into_iter().map(|x| in_range(l, x, q as usize)).collect::<Result<_>>()?;
    lines.finish()?;
    AdditiveMap::from_table(field, table)
}

pub fn write_additive(l: &AdditiveMap) -> String {
    format!("ADDITIVE {}\n{}\n", l.table().len(), join(l.table()))
}

/// A built-in construction that a `STRUCTURED` group file refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuredSpec {
    /// `heisenberg <q>`
    Heisenberg { q: u32 },
    /// `heisenberg-semifield`, followed by an embedded semifield table.
    HeisenbergSemifield(SemifieldTable),
    /// `likeable <q>`, optionally followed by an embedded `ADDITIVE` map.
    Likeable { q: u32, l: Option<AdditiveMap> },
    /// `decorated-heisenberg <q> <e>`: extension by `x ↦ x^(p^e)`.
    DecoratedHeisenberg { q: u32, e: u32 },
    /// `decorated-likeable <q> <e>`
    DecoratedLikeable { q: u32, e: u32 },
}

impl StructuredSpec {
    /// Builds the construction and its soft triple.
    pub fn build(&self) -> Result<SoftTriple> {
        let field = |q: u32| FiniteField::of_order(q);
        match self {
            StructuredSpec::Heisenberg { q } => {
                Ok(Heisenberg::new(Arc::new(field(*q)?))?.triple().clone())
            }
            StructuredSpec::HeisenbergSemifield(s) => {
                Ok(Heisenberg::new(Arc::new(s.clone()))?.triple().clone())
            }
            StructuredSpec::Likeable { q, l } => Ok(Likeable::new(*q, l.clone())?.triple().clone()),
            StructuredSpec::DecoratedHeisenberg { q, e } => {
                let f = field(*q)?;
                let h = Heisenberg::new(Arc::new(f.clone()))?;
                Ok(extend_by_automorphism(&h, &FieldAutomorphism::frobenius(&f, *e))?
                    .triple()
                    .clone())
            }
            StructuredSpec::DecoratedLikeable { q, e } => {
                let l = Likeable::new(*q, None)?;
                let alpha = FieldAutomorphism::frobenius(l.field(), *e);
                Ok(extend_by_automorphism(&l, &alpha)?.triple().clone())
            }
        }
    }

    fn write(&self) -> String {
        match self {
            StructuredSpec::Heisenberg { q } => format!("STRUCTURED heisenberg {q}\n"),
            StructuredSpec::HeisenbergSemifield(s) => {
                format!("STRUCTURED heisenberg-semifield\n{}", write_semifield(s))
            }
            StructuredSpec::Likeable { q, l: None } => format!("STRUCTURED likeable {q}\n"),
            StructuredSpec::Likeable { q, l: Some(l) } => {
                format!("STRUCTURED likeable {q}\n{}", write_additive(l))
            }
            StructuredSpec::DecoratedHeisenberg { q, e } => {
                format!("STRUCTURED decorated-heisenberg {q} {e}\n")
            }
            StructuredSpec::DecoratedLikeable { q, e } => {
                format!("STRUCTURED decorated-likeable {q} {e}\n")
            }
        }
    }
}

/// Contents of a group file.
#[derive(Clone, Debug)]
pub enum GroupFile {
    Dense(Group),
    Structured(StructuredSpec),
}

impl GroupFile {
    pub fn group(&self) -> Result<Group> {
        match self {
            GroupFile::Dense(g) => Ok(g.clone()),
            GroupFile::Structured(s) => Ok(s.build()?.group().clone()),
        }
    }
}

pub fn parse_group(text: &str) -> Result<GroupFile> {
    let mut lines = Lines::new(text);
    let (n, first) = lines.next("a group header")?;
    let mut words = first.split_whitespace();
    let file = match words.next() {
        Some("GROUP") => {
            let order = number(n, words.next().as_ref(), "order")? as usize;
            if order > crate::limits::DENSE_MAX_ORDER {
                return Err(Error::budget("dense group file", order, crate::limits::DENSE_MAX_ORDER));
            }
            let mut table = Vec::with_capacity(order * order);
            for _ in 0..order {
                let (l, row) = lines.numbers("table row", Some(order))?;
                for x in row {
                    table.push(in_range(l, x, order)?);
                }
            }
            GroupFile::Dense(Group::from_cayley_table(order, table, format!("group of order {order}"))?)
        }
        Some("STRUCTURED") => {
            let kind = words.next().ok_or_else(|| Error::parse(n, "missing construction name"))?;
            let args: Vec<&str> = words.collect();
            let arg = |i: usize, what: &str| number(n, args.get(i), what).map(|x| x as u32);
            let spec = match kind {
                "heisenberg" => StructuredSpec::Heisenberg { q: arg(0, "q")? },
                "heisenberg-semifield" => StructuredSpec::HeisenbergSemifield(parse_semifield_lines(&mut lines)?),
                "likeable" => {
                    let q = arg(0, "q")?;
                    let l = if lines.inner.peek().is_some() {
                        let rest: Vec<&str> = std::iter::from_fn(|| lines.inner.next().map(|(_, l)| l)).collect();
                        Some(parse_additive(&rest.join("\n"), &FiniteField::of_order(q)?)?)
                    } else {
                        None
                    };
                    StructuredSpec::Likeable { q, l }
                }
                "decorated-heisenberg" => StructuredSpec::DecoratedHeisenberg {
                    q: arg(0, "q")?,
                    e: arg(1, "exponent")?,
                },
                "decorated-likeable" => StructuredSpec::DecoratedLikeable {
                    q: arg(0, "q")?,
                    e: arg(1, "exponent")?,
                },
                other => return Err(Error::parse(n, format!("unknown construction `{other}`"))),
            };
            GroupFile::Structured(spec)
        }
        _ => return Err(Error::parse(n, "expected `GROUP` or `STRUCTURED`")),
    };
    lines.finish()?;
    Ok(file)
}

pub fn write_dense_group(g: &Group) -> Result<String> {
    let n = g.order();
    let table = g.cayley_table()?;
    let mut out = String::with_capacity(n * n * 4);
    let _ = writeln!(out, "GROUP {n}");
    for row in table.chunks(n) {
        out.push_str(&join(row));
        out.push('\n');
    }
    Ok(out)
}

pub fn write_group(file: &GroupFile) -> Result<String> {
    match file {
        GroupFile::Dense(g) => write_dense_group(g),
        GroupFile::Structured(s) => Ok(s.write()),
    }
}

/// Member lists of a triple file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleFile {
    pub group_path: String,
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
    pub m: Vec<Elem>,
}

impl TripleFile {
    pub fn from_triple(group_path: impl Into<String>, t: &SoftTriple) -> Self {
        TripleFile {
            group_path: group_path.into(),
            a: t.a().to_vec(),
            b: t.b().to_vec(),
            m: t.m().to_vec(),
        }
    }

    /// The three subgroups inside `g`; softness is not checked here.
    pub fn subgroups(&self, g: &Group) -> Result<(Subgroup, Subgroup, Subgroup)> {
        Ok((
            Subgroup::from_elements(g, self.a.iter().copied())?,
            Subgroup::from_elements(g, self.b.iter().copied())?,
            Subgroup::from_elements(g, self.m.iter().copied())?,
        ))
    }
}

pub fn parse_triple(text: &str) -> Result<TripleFile> {
    let mut lines = Lines::new(text);
    let (n, first) = lines.next("a TRIPLE header")?;
    let path = first
        .strip_prefix("TRIPLE")
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .ok_or_else(|| Error::parse(n, "expected `TRIPLE <group file>`"))?;
    let mut lists = Vec::new();
    for label in ["A:", "B:", "M:"] {
        let (l, line) = lines.next(label)?;
        let rest = line
            .strip_prefix(label)
            .ok_or_else(|| Error::parse(l, format!("expected a line starting with `{label}`")))?;
        let v = numbers(l, rest.split_whitespace())?;
        lists.push(v.into_iter().map(|x| x as Elem).collect::<Vec<_>>());
    }
    lines.finish()?;
    let m = lists.pop().unwrap();
    let b = lists.pop().unwrap();
    let a = lists.pop().unwrap();
    Ok(TripleFile {
        group_path: path.to_string(),
        a,
        b,
        m,
    })
}

pub fn write_triple(t: &TripleFile) -> String {
    format!(
        "TRIPLE {}\nA: {}\nB: {}\nM: {}\n",
        t.group_path,
        join(&t.a),
        join(&t.b),
        join(&t.m)
    )
}

pub fn parse_plane(text: &str) -> Result<ProjectivePlane> {
    let mut lines = Lines::new(text);
    let (n, args) = lines.header("PLANE")?;
    let order = number(n, args.first(), "order")? as usize;
    let flag = match args.get(1) {
        None => false,
        Some(&"FLAG") => true,
        Some(w) => return Err(Error::parse(n, format!("unexpected token `{w}`"))),
    };
    let v = order
        .checked_mul(order)
        .and_then(|x| x.checked_add(order + 1))
        .filter(|&v| v <= crate::plane::MAX_POINTS)
        .ok_or_else(|| Error::parse(n, format!("order {order} too large")))?;
    let mut pts = Vec::with_capacity(v);
    for _ in 0..v {
        let (l, row) = lines.numbers("line", Some(order + 1))?;
        pts.push(
            row.into_iter()
                .map(|x| in_range(l, x, v).map(|x| x as usize))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    lines.finish()?;
    ProjectivePlane::from_lines(pts, flag)
}

pub fn write_plane(p: &ProjectivePlane) -> String {
    let mut out = format!("PLANE {}{}\n", p.order(), if p.has_flag() { " FLAG" } else { "" });
    for l in 0..p.num_lines() {
        out.push_str(&join(p.points_on(l)));
        out.push('\n');
    }
    out
}

pub fn write_incidence_matrix(p: &ProjectivePlane) -> String {
    let mut out = String::new();
    for row in p.incidence_matrix() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn parse_collineations(text: &str, plane: &ProjectivePlane) -> Result<Vec<Collineation>> {
    let mut lines = Lines::new(text);
    let (n, args) = lines.header("COLLINEATIONS")?;
    let v = number(n, args.first(), "number of points")? as usize;
    let count = number(n, args.get(1), "count")? as usize;
    if v != plane.num_points() {
        return Err(Error::parse(n, format!("{v} points but the plane has {}", plane.num_points())));
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (l, row) = lines.numbers("point images", Some(v))?;
        let map = row.into_iter().map(|x| in_range(l, x, v).map(|x| x as u16)).collect::<Result<_>>()?;
        out.push(Collineation::from_point_map(plane, map).map_err(|e| Error::parse(l, e.to_string()))?);
    }
    lines.finish()?;
    Ok(out)
}

pub fn write_collineations(cs: &[Collineation], num_points: usize) -> String {
    let mut out = format!("COLLINEATIONS {num_points} {}\n", cs.len());
    for c in cs {
        out.push_str(&join(c.point_map()));
        out.push('\n');
    }
    out
}
