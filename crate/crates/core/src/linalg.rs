//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Builds a complex matrix from real row-major data.
pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> CMat {
    assert_eq!(data.len(), rows * cols);
    CMat::from_fn(rows, cols, |i, j| c(data[i * cols + j], 0.0))
}

/// Kronecker product `a ⊗ b`: block `(i, j)` of the result is `a[(i, j)] * b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (m, n) = a.shape();
    let (p, q) = b.shape();
    let mut out = CMat::zeros(m * p, n * q);
    for i in 0..m {
        for j in 0..n {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Largest entry modulus, 0 for an empty matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Horizontal concatenation `[a b]`.
pub fn hstack(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.nrows(), b.nrows());
    let mut out = CMat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((0, a.ncols()), b.shape()).copy_from(b);
    out
}

/// Vertical concatenation of blocks with equal column counts.
pub fn vstack(blocks: &[CMat]) -> CMat {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        assert_eq!(b.ncols(), cols);
        out.view_mut((r, 0), b.shape()).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Numerical rank with a threshold relative to the largest singular value.
pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > rel_tol * smax).count()
}

/// Orthonormal basis of the null space of `m`: right singular vectors whose
/// singular value is at most `abs_tol`. Wide matrices are padded with zero rows
/// so that the full set of right singular vectors is available.
pub fn null_space(m: &CMat, abs_tol: f64) -> CMat {
    let n = m.ncols();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let padded = if m.nrows() < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), m.shape()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let cols: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= abs_tol)
        .map(|(i, _)| i)
        .collect();
    let mut out = CMat::zeros(n, cols.len());
    for (c, &i) in cols.iter().enumerate() {
        for r in 0..n {
            out[(r, c)] = v_t[(i, r)].conj();
        }
    }
    out
}

/// Orthonormal basis of the column space of `m`, keeping left singular vectors
/// with singular value above `rel_tol` times the largest one.
pub fn column_space(m: &CMat, rel_tol: f64) -> CMat {
    let smax = singular_values(m).first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return CMat::zeros(m.nrows(), 0);
    }
    column_space_abs(m, rel_tol * smax)
}

/// As [`column_space`] with an absolute singular-value cutoff.
pub fn column_space_abs(m: &CMat, abs_tol: f64) -> CMat {
    if m.is_empty() {
        return CMat::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let keep = svd.singular_values.iter().filter(|&&s| s > abs_tol).count();
    u.columns(0, keep).into_owned()
}

/// Orthogonal projector onto the column space of `m`.
pub fn range_projector(m: &CMat, rel_tol: f64) -> CMat {
    let q = column_space(m, rel_tol);
    &q * q.adjoint()
}

/// Orthogonal projector onto `{x : m x = 0}`.
pub fn null_projector(m: &CMat, rel_tol: f64) -> CMat {
    identity(m.ncols()) - range_projector(&m.adjoint(), rel_tol)
}

/// Solves `a x = b` by LU; `None` when `a` is numerically singular.
pub fn solve(a: &CMat, b: &CMat) -> Option<CMat> {
    let s = singular_values(a);
    let smax = s.first().copied().unwrap_or(0.0);
    let smin = s.last().copied().unwrap_or(0.0);
    if smax == 0.0 || smin <= 1e-13 * smax {
        return None;
    }
    a.clone().lu().solve(b)
}
