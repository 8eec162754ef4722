mod extract;
mod feasibility;
mod search;

pub use extract::{extract_soft_triple, opposite_flag_census, sylow_reduction, ExtractionResult};
pub use feasibility::{
    order_feasibility, two_squares, OrderFeasibility, Verdict, NORMAL_M_PARITY, SOFT_PARITY,
    TWO_SQUARES,
};
pub use search::{
    canonical_pair, search_soft_triples, CanonicalPair, SearchOptions, SearchReport,
    SEARCH_MAX_ORDER,
};
