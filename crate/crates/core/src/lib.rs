//! Positroids from Le-diagrams, their bases, and executable checks of the
//! Rayleigh negative-correlation inequality.

#[cfg(feature = "cli")]
pub mod cli;
pub mod injection;
pub mod labels;
pub mod lediagram;
pub mod paths;
pub mod poly;
pub mod positroid;
pub mod rayleigh;
pub mod weights;

pub use labels::LabelSet;
pub use lediagram::{parse_diagram, LeDiagram, LeGraph};
pub use paths::{PathFamily, SearchOrder};
pub use poly::{Monomial, SparsePolynomial};
pub use positroid::{is_basis, BasisRule, Positroid};
pub use weights::{Rational, WeightVector};
