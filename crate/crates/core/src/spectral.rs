//! Eigenvalues `k²` from the secular determinant and the spectral check of the
//! quotient decomposition.
//!
//! On edge `j` an eigenfunction is `a_j sin(kx) + b_j cos(kx)`, so the boundary
//! traces are linear in `(a₁, b₁, …, a_E, b_E)`: `Ψ = P(k)·c`, `Ψ' = Q(k)·c`. The
//! secular matrix is `M(k) = A P(k) + B Q(k)` and `k > 0` is an eigenvalue
//! exactly when `M(k)` is singular, with multiplicity `dim ker M(k)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, SymmetryAction};
use crate::linalg::{c, null_space, CMat, ONE};
use crate::quotient::{build_all_quotients, QuotientGraph, QuotientSet};
use crate::rep::Representation;
use crate::tol::{K_MATCH_TOL, K_MERGE_TOL, K_REFINE_TOL, MULT_SVTOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Sampling step in k; `None` uses `min ℓ_j · π / 200`.
    pub step: Option<f64>,
    /// Worker threads for the sampling pass.
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { step: None, threads: 1 }
    }
}

impl ScanOptions {
    pub fn with_step(step: f64) -> Self {
        Self {
            step: Some(step),
            ..Self::default()
        }
    }

    pub fn step_for(&self, graph: &MetricGraph) -> f64 {
        self.step.unwrap_or(graph.min_length() * PI / 200.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub k: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Strictly increasing in `k`, all inside `(k_min, k_max]`.
    pub entries: Vec<SpectrumEntry>,
    pub window: (f64, f64),
    /// Multiplicity of the eigenvalue 0; `None` unless the window starts at 0.
    pub zero_modes: Option<usize>,
}

impl Spectrum {
    pub fn empty(window: (f64, f64)) -> Self {
        let zero_modes = (window.0 == 0.0).then_some(0);
        Self {
            entries: Vec::new(),
            window,
            zero_modes,
        }
    }

    pub fn ks(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.k).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// One point of the determinant scan, on the row-normalized `M(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetSample {
    pub k: f64,
    pub abs_det: f64,
    /// Smallest singular value relative to the largest.
    pub sigma_min: f64,
}

/// `(P(k), Q(k))` mapping coefficients `(a₁, b₁, …)` to `Ψ` and `Ψ'`.
pub fn trace_maps(graph: &MetricGraph, k: f64) -> (CMat, CMat) {
    let n = 2 * graph.edge_count();
    let mut p = CMat::zeros(n, n);
    let mut q = CMat::zeros(n, n);
    for (j, &l) in graph.edge_lengths().iter().enumerate() {
        let (s, co) = (k * l).sin_cos();
        let (r0, r1, ca, cb) = (2 * j, 2 * j + 1, 2 * j, 2 * j + 1);
        p[(r0, cb)] = ONE;
        p[(r1, ca)] = c(s, 0.0);
        p[(r1, cb)] = c(co, 0.0);
        q[(r0, ca)] = c(k, 0.0);
        q[(r1, ca)] = c(-k * co, 0.0);
        q[(r1, cb)] = c(k * s, 0.0);
    }
    (p, q)
}

pub fn secular_matrix(graph: &MetricGraph, k: f64) -> Result<CMat> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::NonpositiveK(k));
    }
    let (p, q) = trace_maps(graph, k);
    let cp = graph.coupling();
    Ok(&cp.a * p + &cp.b * q)
}

/// `M(0)` for the affine ansatz `f_j(x) = a_j x + b_j`.
pub fn zero_mode_matrix(graph: &MetricGraph) -> CMat {
    let n = 2 * graph.edge_count();
    let mut p = CMat::zeros(n, n);
    let mut q = CMat::zeros(n, n);
    for (j, &l) in graph.edge_lengths().iter().enumerate() {
        p[(2 * j, 2 * j + 1)] = ONE;
        p[(2 * j + 1, 2 * j)] = c(l, 0.0);
        p[(2 * j + 1, 2 * j + 1)] = ONE;
        q[(2 * j, 2 * j)] = ONE;
        q[(2 * j + 1, 2 * j)] = -ONE;
    }
    let cp = graph.coupling();
    &cp.a * p + &cp.b * q
}

fn row_normalized(mut m: CMat) -> CMat {
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= c(norm, 0.0);
        }
    }
    m
}

fn relative_singular_values(m: &CMat) -> Vec<f64> {
    let s = crate::linalg::singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return vec![0.0; s.len()];
    }
    s.iter().map(|v| v / smax).collect()
}

fn sample(graph: &MetricGraph, k: f64) -> DetSample {
    let m = row_normalized(secular_matrix(graph, k).expect("positive k"));
    let abs_det = if m.nrows() == 0 {
        1.0
    } else {
        m.clone().determinant().norm()
    };
    let sigma_min = relative_singular_values(&m).last().copied().unwrap_or(0.0);
    DetSample { k, abs_det, sigma_min }
}

fn sigma_min_at(graph: &MetricGraph, k: f64) -> f64 {
    let m = row_normalized(secular_matrix(graph, k).expect("positive k"));
    relative_singular_values(&m).last().copied().unwrap_or(0.0)
}

fn null_count(m: CMat) -> usize {
    relative_singular_values(&row_normalized(m))
        .iter()
        .filter(|&&s| s < MULT_SVTOL)
        .count()
}

/// Dimension of `ker M(k)`.
pub fn multiplicity_at(graph: &MetricGraph, k: f64) -> Result<usize> {
    Ok(null_count(secular_matrix(graph, k)?))
}

/// Multiplicity of the eigenvalue 0.
pub fn zero_mode_multiplicity(graph: &MetricGraph) -> usize {
    null_count(zero_mode_matrix(graph))
}

/// Orthonormal coefficient vectors `(a₁, b₁, …)` spanning `ker M(k)`.
pub fn null_vectors(graph: &MetricGraph, k: f64) -> Result<CMat> {
    let m = row_normalized(secular_matrix(graph, k)?);
    let smax = crate::linalg::singular_values(&m).first().copied().unwrap_or(0.0);
    Ok(null_space(&m, MULT_SVTOL * smax))
}

fn check_window(k_min: f64, k_max: f64) -> Result<()> {
    if !(k_min.is_finite() && k_max.is_finite() && k_min >= 0.0 && k_min < k_max) {
        return Err(Error::InvalidWindow(format!(
            "need 0 <= k_min < k_max, got ({k_min}, {k_max}]"
        )));
    }
    Ok(())
}

/// Samples `|det M(k)|` on a uniform grid covering `[k_min − h, k_max + h]` (clamped above 0).
pub fn scan_samples(graph: &MetricGraph, k_min: f64, k_max: f64, opts: &ScanOptions) -> Result<Vec<DetSample>> {
    check_window(k_min, k_max)?;
    let h = opts.step_for(graph);
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidWindow(format!("scan step {h} is not positive")));
    }
    let lo = (k_min - h).max(1e-3 * h);
    let count = ((k_max + h - lo) / h).ceil() as usize + 1;
    let ks: Vec<f64> = (0..count).map(|i| lo + i as f64 * h).collect();

    let threads = opts.threads.max(1).min(count);
    if threads == 1 {
        return Ok(ks.iter().map(|&k| sample(graph, k)).collect());
    }
    let chunk = count.div_ceil(threads);
    let mut out = Vec::with_capacity(count);
    std::thread::scope(|scope| {
        let handles: Vec<_> = ks
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&k| sample(graph, k)).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            out.extend(h.join().expect("scan worker panicked"));
        }
    });
    Ok(out)
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
fn golden_min(mut a: f64, mut b: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Roots of `det M(k)` in `(k_min, k_max]`, together with the scan they came from.
pub fn eigenvalues_with_samples(
    graph: &MetricGraph,
    k_min: f64,
    k_max: f64,
    opts: &ScanOptions,
) -> Result<(Spectrum, Vec<DetSample>)> {
    let samples = scan_samples(graph, k_min, k_max, opts)?;
    let h = opts.step_for(graph);

    // |det| brackets the roots; σ_min stays V-shaped at repeated roots, so it drives refinement
    let mut found = Vec::new();
    for w in samples.windows(3) {
        let (l, m, r) = (w[0], w[1], w[2]);
        if !(m.abs_det <= l.abs_det && m.abs_det < r.abs_det) {
            continue;
        }
        let k = golden_min(l.k, r.k, K_REFINE_TOL, |k| sigma_min_at(graph, k));
        if sigma_min_at(graph, k) >= MULT_SVTOL {
            continue;
        }
        if k > k_min && k <= k_max {
            found.push(SpectrumEntry {
                k,
                multiplicity: multiplicity_at(graph, k)?,
            });
        }
    }
    found.sort_by(|a, b| a.k.total_cmp(&b.k));
    let entries = merge_entries(found, |a, b| a.max(b));
    for pair in entries.windows(2) {
        if pair[1].k - pair[0].k < 2.0 * h {
            return Err(Error::WindowTooCoarse {
                k1: pair[0].k,
                k2: pair[1].k,
                suggested_step: (pair[1].k - pair[0].k) / 4.0,
            });
        }
    }
    let zero_modes = (k_min == 0.0).then(|| zero_mode_multiplicity(graph));
    Ok((
        Spectrum {
            entries,
            window: (k_min, k_max),
            zero_modes,
        },
        samples,
    ))
}

pub fn eigenvalues_in_window(graph: &MetricGraph, k_min: f64, k_max: f64, opts: &ScanOptions) -> Result<Spectrum> {
    eigenvalues_with_samples(graph, k_min, k_max, opts).map(|(s, _)| s)
}

/// Merges sorted entries closer than [`K_MERGE_TOL`], combining multiplicities with `combine`.
fn merge_entries(sorted: Vec<SpectrumEntry>, combine: impl Fn(usize, usize) -> usize) -> Vec<SpectrumEntry> {
    let mut out: Vec<SpectrumEntry> = Vec::new();
    let mut anchor = f64::NEG_INFINITY;
    for e in sorted {
        match out.last_mut() {
            Some(last) if e.k - anchor <= K_MERGE_TOL => {
                let total = (last.multiplicity + e.multiplicity) as f64;
                last.k = (last.k * last.multiplicity as f64 + e.k * e.multiplicity as f64) / total.max(1.0);
                last.multiplicity = combine(last.multiplicity, e.multiplicity);
            }
            _ => {
                anchor = e.k;
                out.push(e);
            }
        }
    }
    out
}

/// Per-quotient root with its origin.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRoot {
    pub k: f64,
    /// Multiplicity already scaled by `r(ρ)`.
    pub multiplicity: usize,
    pub sources: Vec<(String, usize)>,
}

fn quotient_roots(
    quotients: &[QuotientGraph],
    k_min: f64,
    k_max: f64,
    opts: &ScanOptions,
) -> Result<(Vec<QuotientRoot>, Option<usize>)> {
    let mut raw: Vec<QuotientRoot> = Vec::new();
    let mut zero = (k_min == 0.0).then_some(0);
    for q in quotients {
        let spec = eigenvalues_in_window(&q.graph()?, k_min, k_max, opts)?;
        if let (Some(z), Some(qz)) = (zero.as_mut(), spec.zero_modes) {
            *z += qz * q.multiplicity;
        }
        for e in spec.entries {
            let m = e.multiplicity * q.multiplicity;
            raw.push(QuotientRoot {
                k: e.k,
                multiplicity: m,
                sources: vec![(q.irrep_label.clone(), m)],
            });
        }
    }
    raw.sort_by(|a, b| a.k.total_cmp(&b.k));
    let mut out: Vec<QuotientRoot> = Vec::new();
    let mut anchor = f64::NEG_INFINITY;
    for r in raw {
        match out.last_mut() {
            Some(last) if r.k - anchor <= K_MERGE_TOL => {
                let total = (last.multiplicity + r.multiplicity) as f64;
                last.k = (last.k * last.multiplicity as f64 + r.k * r.multiplicity as f64) / total;
                last.multiplicity += r.multiplicity;
                last.sources.extend(r.sources);
            }
            _ => {
                anchor = r.k;
                out.push(r);
            }
        }
    }
    Ok((out, zero))
}

/// Multiset union of quotient spectra, each multiplicity scaled by `r(ρ)`.
pub fn direct_sum_spectrum(
    quotients: &[QuotientGraph],
    k_min: f64,
    k_max: f64,
    opts: &ScanOptions,
) -> Result<Spectrum> {
    check_window(k_min, k_max)?;
    let (roots, zero_modes) = quotient_roots(quotients, k_min, k_max, opts)?;
    Ok(Spectrum {
        entries: roots
            .into_iter()
            .map(|r| SpectrumEntry {
                k: r.k,
                multiplicity: r.multiplicity,
            })
            .collect(),
        window: (k_min, k_max),
        zero_modes,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairingRow {
    pub full: Option<SpectrumEntry>,
    pub quotient: Option<QuotientRoot>,
    /// Excluded from the verdict: within [`K_MATCH_TOL`] of the window edge.
    pub at_boundary: bool,
}

impl PairingRow {
    pub fn k(&self) -> f64 {
        self.full
            .map(|f| f.k)
            .or(self.quotient.as_ref().map(|q| q.k))
            .unwrap_or(f64::NAN)
    }

    pub fn delta_k(&self) -> Option<f64> {
        Some(self.quotient.as_ref()?.k - self.full?.k)
    }

    pub fn matches(&self) -> bool {
        match (&self.full, &self.quotient) {
            (Some(f), Some(q)) => f.multiplicity == q.multiplicity,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub quotients: QuotientSet,
    pub full: Spectrum,
    pub rows: Vec<PairingRow>,
    pub full_zero_modes: Option<usize>,
    pub quotient_zero_modes: Option<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.full_zero_modes == self.quotient_zero_modes
            && self.rows.iter().filter(|r| !r.at_boundary).all(PairingRow::matches)
    }

    pub fn mismatches(&self) -> Vec<&PairingRow> {
        self.rows.iter().filter(|r| !r.at_boundary && !r.matches()).collect()
    }
}

/// Compares the spectrum of `graph` with the direct sum of its quotients.
pub fn verify_theorem(
    graph: &MetricGraph,
    action: &SymmetryAction,
    irreps: &[Representation],
    k_min: f64,
    k_max: f64,
    opts: &ScanOptions,
) -> Result<VerificationReport> {
    check_window(k_min, k_max)?;
    let quotients = build_all_quotients(graph, action, irreps)?;
    let full = eigenvalues_in_window(graph, k_min, k_max, opts)?;
    let (qroots, quotient_zero_modes) = quotient_roots(&quotients.quotients, k_min, k_max, opts)?;

    let at_boundary = |k: f64| k - k_min <= K_MATCH_TOL || k_max - k <= K_MATCH_TOL;
    let mut rows = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < full.entries.len() || j < qroots.len() {
        let f = full.entries.get(i).copied();
        let q = qroots.get(j);
        let row = match (f, q) {
            (Some(f), Some(q)) if (f.k - q.k).abs() <= K_MATCH_TOL => {
                i += 1;
                j += 1;
                PairingRow {
                    full: Some(f),
                    quotient: Some(q.clone()),
                    at_boundary: at_boundary(f.k),
                }
            }
            (Some(f), Some(q)) if f.k < q.k => {
                i += 1;
                PairingRow {
                    full: Some(f),
                    quotient: None,
                    at_boundary: at_boundary(f.k),
                }
            }
            (Some(f), None) => {
                i += 1;
                PairingRow {
                    full: Some(f),
                    quotient: None,
                    at_boundary: at_boundary(f.k),
                }
            }
            (_, Some(q)) => {
                j += 1;
                PairingRow {
                    full: None,
                    quotient: Some(q.clone()),
                    at_boundary: at_boundary(q.k),
                }
            }
            (None, None) => unreachable!(),
        };
        rows.push(row);
    }
    let full_zero_modes = full.zero_modes;
    Ok(VerificationReport {
        quotients,
        full,
        rows,
        full_zero_modes,
        quotient_zero_modes,
    })
}

/// Residual `‖A Ψ + B Ψ'‖` of boundary data against a coupling, relative to `‖(Ψ, Ψ')‖`.
pub fn coupling_residual(a: &CMat, b: &CMat, psi: &CMat, dpsi: &CMat) -> f64 {
    let scale = (psi.norm_squared() + dpsi.norm_squared()).sqrt();
    if scale == 0.0 {
        return 0.0;
    }
    (a * psi + b * dpsi).norm() / scale
}
