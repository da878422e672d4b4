//! Exact computation with matrix-represented matroids over finite fields.
//!
//! The crate builds projective geometries PG(n-1, q) and the extended
//! geometries PG^(k)(n-1, q) over GF(q^2), evaluates their point-count and
//! growth-rate formulas, and implements the constructive pieces around
//! them: normalization of GF(q^2)-representations of spanning GF(q)-geometries,
//! exhaustive projective-geometry minor search, line matchings, unstable
//! sets, constellations, weak roundness, and skew dense subsets.

pub mod construct;
pub mod density;
pub mod error;
pub mod field;
pub mod geometry;
pub mod iso;
pub mod linalg;
pub mod matroid;
pub mod normalize;
pub mod minors;
pub mod pg_handle;
pub mod suite;
pub mod text;

pub use construct::{
    build_epg, build_extension_rep, build_pg, epg_size_formula, extremal_projection_member,
    growth_rate_formula, kung_bound, random_projection_member, ProjectionMember, ZSetSpec,
};
pub use error::{Error, Result};
pub use field::{FieldElem, FieldSpec};
pub use iso::{find_isomorphism, matroid_isomorphic};
pub use matroid::{Label, LabelSet, RepMatroid, SimplificationMap};
pub use pg_handle::PgHandle;
