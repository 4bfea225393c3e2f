//! Numerical tolerances shared across the crate.

/// Homomorphism check for representations built from integer permutations.
pub const TOL_REP: f64 = 1e-12;
/// Distance from 1 (irreducibility) or from an integer (multiplicity) for character inner products.
pub const TOL_CHAR: f64 = 1e-12;
/// Hermiticity residual, projector agreement and Ã + iB̃ = I checks on couplings.
pub const TOL_COUPLING: f64 = 1e-10;
/// Relative singular value threshold for the numerical rank of `[A B]`.
pub const RANK_TOL: f64 = 1e-10;
/// Absolute singular value threshold for the stacked kernel matrix.
pub const KERNEL_SVTOL: f64 = 1e-10;
/// Orthonormality of kernel bases.
pub const TOL_ORTH: f64 = 1e-12;
/// Width of the final bracket when refining a root in k.
pub const K_REFINE_TOL: f64 = 1e-10;
/// Relative singular value threshold counting the null space of M(k).
pub const MULT_SVTOL: f64 = 1e-7;
/// Roots closer than this are merged in a direct-sum spectrum.
pub const K_MERGE_TOL: f64 = 1e-8;
/// Pairing tolerance between full-graph and quotient roots.
pub const K_MATCH_TOL: f64 = 1e-8;
/// Largest group order accepted by closure before giving up.
pub const DEFAULT_GROUP_CAP: usize = 720;
