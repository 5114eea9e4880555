//! Deterministic strategies, classical polytopes and their inequalities.

pub mod bound;
pub mod canonical;
pub mod exact;
pub mod facet;
pub mod lp;
pub mod membership;
pub mod strategy;
pub mod vertices;

pub use bound::{classical_bound, classical_bound_with_cap, endpoint_count};
pub use canonical::{canonical_form, equivalent, group_order};
pub use facet::{facet_report, verify_facet, verify_facet_with_cap, FacetReport};
pub use membership::{membership, Membership};
pub use strategy::ClassicalStrategy;
pub use vertices::{enumerate_vertices, raw_strategy_count, VertexSet, DEFAULT_CAP};
