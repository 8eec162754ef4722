//! Explicit soft groups: Heisenberg groups over fields and semifields,
//! likeable groups, and extensions by field automorphisms.

mod decorated;
mod heisenberg;
mod likeable;

pub use decorated::{
    decorate, decorated_subgroup_search, extend_by_automorphism, translations, Decorated,
    DecoratedCandidate, DecoratedHit, EntrywiseAutomorphism,
};
pub use heisenberg::{heisenberg, Heisenberg};
pub use likeable::{likeable, ActionConvention, Likeable};
