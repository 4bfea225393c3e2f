//! Symmetry reduction of quantum graphs.
//!
//! A metric graph with self-adjoint vertex couplings `A Ψ + B Ψ' = 0` and a finite
//! group permuting its edges is split into one quotient graph per irreducible
//! representation. The spectrum of the original Laplacian equals the union of the
//! quotient spectra, each taken with multiplicity equal to the representation
//! dimension; [`spectral::verify_theorem`] checks this numerically.
//!
//! Module map:
//! - [`group`]: permutations, finite groups from generators, conjugacy classes.
//! - [`rep`]: representations, characters, multiplicities, built-in irreps.
//! - [`graph`]: metric graphs, coupling validation, star-graph builders, symmetry check.
//! - [`quotient`]: kernel spaces, Θ matrices and quotient couplings.
//! - [`spectral`]: secular determinant, root scanning, spectrum comparison.

pub mod error;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod quotient;
pub mod rep;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use graph::{CouplingPair, MetricGraph, SymmetryAction};
pub use group::{FiniteGroup, Permutation};
pub use linalg::{CMat, C64};
pub use quotient::{KernelSpace, QuotientGraph, QuotientSet};
pub use rep::{BuiltinGroup, Character, Representation};
pub use spectral::{ScanOptions, Spectrum, SpectrumEntry};
