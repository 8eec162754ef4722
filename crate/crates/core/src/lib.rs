//! Finite projective planes built from groups.
//!
//! A *soft triple* `(G, A, B, M)` is a finite group with three subgroups
//! satisfying four coset conditions. Every such triple yields a projective
//! plane of order `n = |A| / |A ∩ B|` whose points and lines are cosets,
//! and `G` acts on it by right multiplication, fixing a flag `(∞, L∞)` and
//! acting transitively on the `n³` flags opposite to it. Conversely any
//! plane with a collineation group having a flag-orbit of size `n³` arises
//! this way.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite fields, semifield tables and field automorphisms.
//! * [`group`]: group carriers (Cayley tables or structured laws), subgroups,
//!   cosets and structural computations.
//! * [`soft`]: verification of the four conditions and their consequences.
//! * [`plane`]: the coset plane, axiom checks, collineations, reference
//!   desarguesian planes, isomorphism search and ternary-ring coordinates.
//! * [`analysis`]: elation groups, translation-plane detection and the
//!   structural proposition battery.
//! * [`constructions`]: Heisenberg, likeable and automorphism-decorated
//!   soft groups.
//! * [`converse`]: extracting soft triples from planes, Sylow reduction,
//!   order filters and exhaustive search.
//! * [`io`]: the text file formats.

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod converse;
pub mod error;
pub mod group;
pub mod io;
pub mod limits;
pub mod plane;
pub mod soft;

pub use error::{Error, Result};
pub use group::{Elem, Group, Subgroup};
pub use plane::{Collineation, CollineationGroup, ProjectivePlane};
pub use soft::SoftTriple;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
