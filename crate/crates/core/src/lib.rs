//! Exact homology engine for symmetric products, truncated symmetric products
//! and braid spaces of manifolds.
//!
//! The crate is organised bottom-up:
//!
//! - [`chaincore`]: integer matrices, Smith normal form, chain complexes and
//!   graded groups.
//! - [`tsp`]: the cell model of truncated products of the circle and the
//!   wedge decomposition of reduced truncated products.
//! - [`spsym`]: the multiplicative cell complex of symmetric products of
//!   two-dimensional complexes.
//! - [`braidduality`]: braid-space cohomology through duality with truncated
//!   products, and the puncture splitting formulas.
//! - [`bounds`]: connectivity, cohomological dimension and stability ranges.
//! - [`corpus`]: the known-values registry and verification runner used by
//!   the CLI.

pub mod bounds;
pub mod braidduality;
pub mod chaincore;
pub mod combinatorics;
pub mod corpus;
pub mod error;
pub mod spsym;
pub mod tsp;

pub use chaincore::{
    homology, relative_homology, smith_normal_form, ChainComplex, Coefficients, GradedGroup,
    IntMatrix,
};
pub use error::{Error, Result};
