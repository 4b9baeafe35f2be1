//! Space-filling-curve orderings for 3D data volumes of arbitrary extent.
//!
//! A volume has `P` slabs, `N` rows and `M` columns ([`Dims3`]). Every
//! ordering is materialized as a [`CurvePath`]: the cells of the volume listed
//! in curve-rank order. The crate provides
//!
//! - row-major order ([`row_major_path`]),
//! - generalized Morton order built from unequal octants ([`morton::morton_general`]),
//! - generalized Hilbert order built from five-block recursion ([`hilbert::hilbert_general`]),
//! - two-level hybrids of the above ([`hybrid::hybrid_order`]),
//!
//! plus verification and locality measurement in [`analysis`].

pub mod analysis;
pub mod error;
pub mod hilbert;
pub mod hybrid;
pub mod model;
pub mod morton;
pub mod ordering;

pub use error::{Error, Result};
pub use model::{
    coord_of, linear_index, row_major_path, Coord3, CurvePath, Dims3, RankTable, UnitStep,
};
pub use ordering::{BaseOrder, OrderingSpec};
