use crate::algebra::{field_eval_f, AdditiveMap, FieldAutomorphism, FiniteField};
use crate::group::{Elem, Group, GroupLaw, Subgroup};
use crate::limits;
use crate::soft::{verify_soft_triple, SoftTriple};
use crate::{Error, Result};

/// How the commutator value `[a, v] = −(0, xt, xu+yt, xf+yu+zt)` turns into
/// an action `v ↦ v^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionConvention {
    /// `v^a = v − [a, v]`. This is the convention under which the action
    /// closes up into a group of automorphisms.
    SubtractCommutator,
    /// `v^a = v + [a, v]`, which fails certification.
    AddCommutator,
}

/// Lower unitriangular `4×4` matrix acting on row vectors `(x, y, z, w)`
/// by `v ↦ v + s·D(v)` where `D = (0, xt, xu+yt, xf+yu+zt)` and `s = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Action {
    /// `m[i][j]`: coefficient of coordinate `j` in output `i` (`j < i`).
    m: [[u32; 4]; 4],
}

impl Action {
    fn new(f: &FiniteField, t: u32, u: u32, ft: u32, sign: bool) -> Self {
        let s = |x: u32| if sign { x } else { f.neg(x) };
        let mut m = [[0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m[1][0] = s(t);
        m[2][0] = s(u);
        m[2][1] = s(t);
        m[3][0] = s(ft);
        m[3][1] = s(u);
        m[3][2] = s(t);
        Action { m }
    }

    fn apply(&self, f: &FiniteField, v: [u32; 4]) -> [u32; 4] {
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = v[i];
            for j in 0..i {
                acc = f.add(acc, f.mul(self.m[i][j], v[j]));
            }
            *o = acc;
        }
        out
    }

    /// `self` followed by `other`.
    fn then(&self, f: &FiniteField, other: &Action) -> Action {
        let mut m = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0;
                for k in 0..4 {
                    acc = f.add(acc, f.mul(other.m[i][k], self.m[k][j]));
                }
                m[i][j] = acc;
            }
        }
        Action { m }
    }
}

/// `A ⋉ F⁴` with `A = {(t, u)}`; element id `(t + q·u) + q²·(x + q·y + q²·z + q³·w)`.
struct LikeableLaw {
    field: FiniteField,
    q: u32,
    actions: Vec<Action>,
    /// `A`-label product and inverse.
    label_mul: Box<dyn Fn(u32, u32) -> u32 + Send + Sync>,
    label_inv: Vec<u32>,
}

impl LikeableLaw {
    fn split(&self, e: Elem) -> (u32, [u32; 4]) {
        let q = self.q;
        let qq = q * q;
        let a = e % qq;
        let mut r = e / qq;
        let mut v = [0; 4];
        for x in v.iter_mut() {
            *x = r % q;
            r /= q;
        }
        (a, v)
    }

    fn join(&self, a: u32, v: [u32; 4]) -> Elem {
        let q = self.q;
        a + q * q * (v[0] + q * (v[1] + q * (v[2] + q * v[3])))
    }
}

impl GroupLaw for LikeableLaw {
    fn order(&self) -> usize {
        (self.q as usize).pow(6)
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (a, v) = self.split(x);
        let (b, w) = self.split(y);
        let va = self.actions[b as usize].apply(&self.field, v);
        let f = &self.field;
        let s = [f.add(va[0], w[0]), f.add(va[1], w[1]), f.add(va[2], w[2]), f.add(va[3], w[3])];
        self.join((self.label_mul)(a, b), s)
    }

    fn inv(&self, x: Elem) -> Elem {
        let (a, v) = self.split(x);
        let ai = self.label_inv[a as usize];
        let w = self.actions[ai as usize].apply(&self.field, v);
        let f = &self.field;
        self.join(ai, [f.neg(w[0]), f.neg(w[1]), f.neg(w[2]), f.neg(w[3])])
    }
}

/// The likeable group over `GF(q)` and its soft triple
/// `A = {(t,u)}`, `B = (F,F,0,0)`, `M = (0,0,F,F)`.
#[derive(Clone, Debug)]
pub struct Likeable {
    field: FiniteField,
    triple: SoftTriple,
}

fn certify_actions(
    field: &FiniteField,
    l: &AdditiveMap,
    sign: bool,
) -> Result<(Vec<Action>, Vec<u32>)> {
    let q = field.order();
    let mut actions = Vec::with_capacity((q * q) as usize);
    for a in 0..q * q {
        let (t, u) = (a % q, a / q);
        actions.push(Action::new(field, t, u, field_eval_f(field, t, u, l)?, sign));
    }
    // Labels of products: the composite of two actions must again be one
    // of the actions, identified by its (y, x) and (z, x) entries.
    let label = |act: &Action| -> Option<u32> {
        let t = act.m[1][0];
        let u = act.m[2][0];
        let (t, u) = if sign { (t, u) } else { (field.neg(t), field.neg(u)) };
        let c = t + q * u;
        (actions[c as usize] == *act).then_some(c)
    };
    // Exhaustive on labels when feasible, else against a generating set.
    let gens: Vec<u32> = if (q as usize).pow(4) <= 1_000_000 {
        (0..q * q).collect()
    } else {
        let p = field.p();
        let mut g = Vec::new();
        let mut e = 1;
        while e < q {
            g.push(e);
            g.push(q * e);
            e *= p;
        }
        g
    };
    for a in 0..q * q {
        for &b in &gens {
            let comp = actions[a as usize].then(field, &actions[b as usize]);
            if label(&comp).is_none() {
                return Err(Error::Construction(format!(
                    "the action is not closed: composing labels {a} and {b} gives no action"
                )));
            }
        }
    }
    // Label law read off the composite: (t,u)(t',u') = (t+t', u+u'±tt').
    let mut inv = vec![0; (q * q) as usize];
    for a in 0..q * q {
        let (t, u) = (a % q, a / q);
        let tt = field.mul(t, t);
        // (t,u)(−t,u') = (0, u+u'∓t²) = (0,0)
        let up = if sign { field.sub(tt, u) } else { field.neg(field.add(u, tt)) };
        inv[a as usize] = field.neg(t) + q * up;
    }
    Ok((actions, inv))
}

impl Likeable {
    pub fn new(q: u32, l: Option<AdditiveMap>) -> Result<Self> {
        Self::with_convention(q, l, ActionConvention::SubtractCommutator)
    }

    pub fn with_convention(q: u32, l: Option<AdditiveMap>, conv: ActionConvention) -> Result<Self> {
        let field = FiniteField::of_order(q)?;
        if q % 2 == 0 || q % 3 != 2 {
            return Err(Error::Construction(format!(
                "likeable groups need q odd with q = 2 mod 3, got {q}"
            )));
        }
        limits::check_elements("likeable group", (q as usize).pow(6))?;
        let l = match l {
            Some(l) => l,
            None => AdditiveMap::zero(&field),
        };
        let sign = conv == ActionConvention::SubtractCommutator;
        let (actions, label_inv) = certify_actions(&field, &l, sign)?;
        let f2 = field.clone();
        let label_mul = move |a: u32, b: u32| {
            let (t, u) = (a % q, a / q);
            let (t2, u2) = (b % q, b / q);
            let tt = f2.mul(t, t2);
            let cross = if sign { tt } else { f2.neg(tt) };
            f2.add(t, t2) + q * f2.add(f2.add(u, u2), cross)
        };
        // the label law must agree with composition of the actions
        for a in 0..q * q {
            for b in [1, q] {
                let comp = actions[a as usize].then(&field, &actions[b as usize]);
                if comp != actions[label_mul(a, b) as usize] {
                    return Err(Error::Construction("label law disagrees with composition".into()));
                }
            }
        }
        let law = LikeableLaw {
            field: field.clone(),
            q,
            actions,
            label_mul: Box::new(label_mul),
            label_inv,
        };
        let g = Group::structured(Box::new(law), format!("Likeable({q})"))?;
        let qq = q * q;
        let a = Subgroup::from_elements(&g, 0..qq)?;
        let vec_id = |x: u32, y: u32, z: u32, w: u32| qq * (x + q * (y + q * (z + q * w)));
        let b = Subgroup::from_elements(&g, (0..qq).map(|i| vec_id(i % q, i / q, 0, 0)))?;
        let m = Subgroup::from_elements(&g, (0..qq).map(|i| vec_id(0, 0, i % q, i / q)))?;
        let triple = verify_soft_triple(&g, &a, &b, &m)?;
        Ok(Likeable { field, triple })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn triple(&self) -> &SoftTriple {
        &self.triple
    }

    pub fn group(&self) -> &Group {
        self.triple.group()
    }

    /// Id of `(t, u; x, y, z, w)`.
    pub fn element(&self, t: u32, u: u32, v: [u32; 4]) -> Elem {
        let q = self.field.order();
        t + q * u + q * q * (v[0] + q * (v[1] + q * (v[2] + q * v[3])))
    }

    pub fn coordinates(&self, e: Elem) -> (u32, u32, [u32; 4]) {
        let q = self.field.order();
        let mut r = e / (q * q);
        let mut v = [0; 4];
        for x in v.iter_mut() {
            *x = r % q;
            r /= q;
        }
        (e % q, (e / q) % q, v)
    }

    /// Entrywise action of `α` on all six coordinates. It is an
    /// automorphism when `α` commutes with `l`.
    pub fn entrywise(&self, alpha: &FieldAutomorphism) -> Vec<Elem> {
        self.group()
            .elements()
            .map(|e| {
                let (t, u, v) = self.coordinates(e);
                self.element(alpha.apply(t), alpha.apply(u), v.map(|x| alpha.apply(x)))
            })
            .collect()
    }
}

pub fn likeable(q: u32, l: Option<AdditiveMap>) -> Result<SoftTriple> {
    Ok(Likeable::new(q, l)?.triple().clone())
}
