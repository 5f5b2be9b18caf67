//! Exact homology of finite chain complexes and arithmetic on graded tables.

mod coefficients;
mod complex;
mod graded;
mod matrix;
mod snf;

pub use coefficients::Coefficients;
pub use complex::{homology, labels_where, relative_homology, ChainComplex};
pub use graded::{table_algebra, GradedGroup, GroupEntry, TableOp};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
