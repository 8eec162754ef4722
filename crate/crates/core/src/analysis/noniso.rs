use std::fmt;

use crate::group::{
    abelianization_invariants, center, center_and_series, element_order_histogram, Group,
};
use crate::Result;

/// An isomorphism invariant on which two groups differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonIsoCertificate {
    pub invariant: &'static str,
    pub left: String,
    pub right: String,
}

impl fmt::Display for NonIsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} differs: {} vs {}", self.invariant, self.left, self.right)
    }
}

/// Compares order, center order, abelianization, element
/// orders, derived and lower central series orders and nilpotency class,
/// in that order. `None` means every invariant agrees, which proves
/// nothing.
pub fn noniso_certificate(g1: &Group, g2: &Group) -> Result<Option<NonIsoCertificate>> {
    type Inv = Box<dyn Fn(&Group) -> Result<String>>;
    let invariants: Vec<(&'static str, Inv)> = vec![
        ("order", Box::new(|g| Ok(g.order().to_string()))),
        ("center order", Box::new(|g| Ok(center(g).order().to_string()))),
        (
            "abelianization invariants",
            Box::new(|g| Ok(format!("{:?}", abelianization_invariants(g)?))),
        ),
        (
            "element order histogram",
            Box::new(|g| Ok(format!("{:?}", element_order_histogram(g)))),
        ),
        (
            "derived series orders",
            Box::new(|g| {
                let s = center_and_series(g)?;
                Ok(format!("{:?}", s.derived.iter().map(|h| h.order()).collect::<Vec<_>>()))
            }),
        ),
        (
            "lower central series orders",
            Box::new(|g| {
                let s = center_and_series(g)?;
                Ok(format!("{:?}", s.lower_central.iter().map(|h| h.order()).collect::<Vec<_>>()))
            }),
        ),
        (
            "nilpotency class",
            Box::new(|g| Ok(format!("{:?}", center_and_series(g)?.nilpotency_class))),
        ),
    ];
    for (name, f) in invariants {
        let (a, b) = (f(g1)?, f(g2)?);
        if a != b {
            return Ok(Some(NonIsoCertificate {
                invariant: name,
                left: a,
                right: b,
            }));
        }
    }
    Ok(None)
}
