//! Quotient graphs: one smaller graph per irreducible representation.
//!
//! For an irrep `ρ` of dimension `r` and the edge permutation representation `π`,
//! the kernel space is `⋂_g Ker[I_r ⊗ π(g) − ρ(g)ᵀ ⊗ I_E]`, split by edge orbit.
//! Its orthonormal basis `Θ` (and `Θ̂ = Θ ⊗ I₂`) compresses the normalized coupling
//! `Ã = (A+iB)⁻¹A`, `B̃ = (A+iB)⁻¹B` into `A_ρ = Θ̂†(I_r⊗Ã)Θ̂`, `B_ρ = Θ̂†(I_r⊗B̃)Θ̂`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{check_pi_symmetric, hat_matrix, segment, CouplingPair, EndCondition, MetricGraph, SymmetryAction};
use crate::linalg::{column_space, column_space_abs, identity, kron, max_abs, null_space, solve, vstack, CMat, I};
use crate::rep::Representation;
use crate::tol::{KERNEL_SVTOL, RANK_TOL, TOL_COUPLING};

/// Orthonormal basis of `K_G(ρ, π)`, columns grouped by edge orbit.
#[derive(Debug, Clone)]
pub struct KernelSpace {
    pub irrep_label: String,
    /// Dimension `r` of the irrep.
    pub irrep_dim: usize,
    pub edge_count: usize,
    /// `(r·E) × d`; row `a·E + j` is carrier component `a` on edge `j`.
    pub basis: CMat,
    /// Orbits of the action, in the order their columns appear in `basis`.
    pub orbits: Vec<Vec<usize>>,
    /// `d_i` for each orbit.
    pub per_orbit_dims: Vec<usize>,
}

impl KernelSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orbit index of each basis column.
    pub fn column_orbits(&self) -> Vec<usize> {
        self.per_orbit_dims
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat_n(i, d))
            .collect()
    }

    /// `(Θ, Θ̂)`.
    pub fn theta_matrices(&self) -> Result<(CMat, CMat)> {
        if self.dim() == 0 {
            return Err(Error::EmptyKernel {
                irrep: self.irrep_label.clone(),
            });
        }
        let theta = self.basis.clone();
        let theta_hat = hat_matrix(&theta);
        Ok((theta, theta_hat))
    }
}

/// The stacked `|G|·(rE) × rE` matrix whose null space is the kernel space.
pub fn kernel_constraints(rho: &Representation, pi: &Representation) -> Result<CMat> {
    if rho.group().order() != pi.group().order()
        || (!Arc::ptr_eq(rho.group(), pi.group()) && **rho.group() != **pi.group())
    {
        return Err(Error::DimensionMismatch(format!(
            "{} and {} live on different groups",
            rho.label(),
            pi.label()
        )));
    }
    let r = rho.dim();
    let e = pi.dim();
    let blocks: Vec<CMat> = (0..rho.group().order())
        .map(|g| kron(&identity(r), pi.matrix(g)) - kron(&rho.matrix(g).transpose(), &identity(e)))
        .collect();
    Ok(vstack(&blocks))
}

/// Kernel space of `rho` against the permutation representation of `action`.
pub fn kernel_space(rho: &Representation, action: &SymmetryAction) -> Result<KernelSpace> {
    let pi = action.permutation_representation();
    let stacked = kernel_constraints(rho, &pi)?;
    let r = rho.dim();
    let e = action.edge_count();
    let global = null_space(&stacked, KERNEL_SVTOL);

    // π preserves each orbit, so K splits as ⊕ K ∩ (V_ρ ⊗ X_i) and the masked
    // blocks of an orthonormal basis of K have singular values exactly 0 or 1.
    let orbits = action.orbits();
    let mut parts = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let mut masked = CMat::zeros(r * e, global.ncols());
        for a in 0..r {
            for &j in orbit {
                masked.row_mut(a * e + j).copy_from(&global.row(a * e + j));
            }
        }
        let mut q = column_space_abs(&masked, 0.5);
        fix_phases(&mut q);
        parts.push(q);
    }
    let per_orbit_dims: Vec<usize> = parts.iter().map(|p| p.ncols()).collect();
    let d: usize = per_orbit_dims.iter().sum();
    debug_assert_eq!(d, global.ncols());
    let mut basis = CMat::zeros(r * e, d);
    let mut col = 0;
    for p in &parts {
        basis.view_mut((0, col), p.shape()).copy_from(p);
        col += p.ncols();
    }
    Ok(KernelSpace {
        irrep_label: rho.label().to_string(),
        irrep_dim: r,
        edge_count: e,
        basis,
        orbits,
        per_orbit_dims,
    })
}

/// Rotates each column so its first non-negligible entry is real and positive.
fn fix_phases(m: &mut CMat) {
    for mut col in m.column_iter_mut() {
        let norm = col.norm();
        if let Some(z) = col.iter().copied().find(|z| z.norm() > 1e-8 * norm) {
            let phase = z.conj() / z.norm();
            col *= phase;
        }
    }
}

/// `Ã = (A+iB)⁻¹A`, `B̃ = (A+iB)⁻¹B`.
pub fn tilde_pair(pair: &CouplingPair) -> Result<(CMat, CMat)> {
    let m = &pair.a + &pair.b * I;
    let at = solve(&m, &pair.a).ok_or_else(|| Error::SingularMatrix("A + iB is not invertible".into()))?;
    let bt = solve(&m, &pair.b).ok_or_else(|| Error::SingularMatrix("A + iB is not invertible".into()))?;
    Ok((at, bt))
}

/// `(Θ̂†(I_r⊗Ã)Θ̂, Θ̂†(I_r⊗B̃)Θ̂)`.
pub fn quotient_coupling(theta_hat: &CMat, a_tilde: &CMat, b_tilde: &CMat, r: usize) -> Result<CouplingPair> {
    let n = a_tilde.nrows();
    if a_tilde.shape() != (n, n) || b_tilde.shape() != (n, n) || theta_hat.nrows() != r * n {
        return Err(Error::DimensionMismatch(format!(
            "Θ̂ has {} rows, expected {r} x {n}",
            theta_hat.nrows()
        )));
    }
    let id = identity(r);
    let a = theta_hat.adjoint() * kron(&id, a_tilde) * theta_hat;
    let b = theta_hat.adjoint() * kron(&id, b_tilde) * theta_hat;
    CouplingPair::new(a, b)
}

#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub irrep_label: String,
    /// `r(ρ)`: number of copies in the direct sum.
    pub multiplicity: usize,
    /// `d_i` per orbit; orbits with `d_i = 0` contribute no edges.
    pub orbit_dims: Vec<usize>,
    pub edge_lengths: Vec<f64>,
    pub coupling: CouplingPair,
    pub theta: CMat,
}

impl QuotientGraph {
    pub fn edge_count(&self) -> usize {
        self.edge_lengths.len()
    }

    pub fn graph(&self) -> Result<MetricGraph> {
        MetricGraph::new(self.edge_lengths.clone(), self.coupling.clone())
    }

    /// Separated end conditions when this is a single segment with a recognized
    /// Neumann / Dirichlet / Robin condition at each end.
    pub fn segment_ends(&self) -> Option<(EndCondition, EndCondition)> {
        if self.edge_count() != 1 {
            return None;
        }
        classify_segment(&self.coupling)
    }
}

#[derive(Debug, Clone)]
pub struct QuotientSet {
    pub quotients: Vec<QuotientGraph>,
    /// Irreps whose kernel space is empty.
    pub skipped: Vec<String>,
}

pub fn build_quotient(
    graph: &MetricGraph,
    action: &SymmetryAction,
    irrep: &Representation,
    tilde: &(CMat, CMat),
) -> Result<Option<QuotientGraph>> {
    let kernel = kernel_space(irrep, action)?;
    if kernel.dim() == 0 {
        return Ok(None);
    }
    let (theta, theta_hat) = kernel.theta_matrices()?;
    let coupling = quotient_coupling(&theta_hat, &tilde.0, &tilde.1, irrep.dim())?;
    let edge_lengths = kernel
        .column_orbits()
        .into_iter()
        .map(|i| graph.edge_lengths()[kernel.orbits[i][0]])
        .collect();
    Ok(Some(QuotientGraph {
        irrep_label: irrep.label().to_string(),
        multiplicity: irrep.dim(),
        orbit_dims: kernel.per_orbit_dims,
        edge_lengths,
        coupling,
        theta,
    }))
}

/// One quotient per irrep with a nonempty kernel space.
pub fn build_all_quotients(
    graph: &MetricGraph,
    action: &SymmetryAction,
    irreps: &[Representation],
) -> Result<QuotientSet> {
    check_pi_symmetric(graph, action)?.into_result()?;
    for rho in irreps {
        if !rho.is_irreducible() {
            let chi = rho.character();
            return Err(Error::ReducibleInput {
                label: rho.label().to_string(),
                norm: chi.inner(&chi).re,
            });
        }
    }
    let tilde = tilde_pair(graph.coupling())?;
    let mut quotients = Vec::new();
    let mut skipped = Vec::new();
    for rho in irreps {
        match build_quotient(graph, action, rho, &tilde)? {
            Some(q) => quotients.push(q),
            None => skipped.push(rho.label().to_string()),
        }
    }
    Ok(QuotientSet { quotients, skipped })
}

/// Whether two couplings impose the same constraints on `(Ψ, Ψ')`.
pub fn conditions_equivalent(c1: &CouplingPair, c2: &CouplingPair) -> Result<bool> {
    Ok(projector_distance(c1, c2)? < TOL_COUPLING)
}

/// `max |P₁ − P₂|` between the solution-space projectors of two couplings.
pub fn projector_distance(c1: &CouplingPair, c2: &CouplingPair) -> Result<f64> {
    if c1.size() != c2.size() {
        return Err(Error::DimensionMismatch(format!(
            "couplings of size {} and {}",
            c1.size(),
            c2.size()
        )));
    }
    Ok(max_abs(&(c1.solution_projector() - c2.solution_projector())))
}

/// Reads off separated end conditions of a one-edge coupling, confirmed by
/// [`conditions_equivalent`] against the rebuilt segment.
pub fn classify_segment(pair: &CouplingPair) -> Option<(EndCondition, EndCondition)> {
    if pair.size() != 2 {
        return None;
    }
    // orthonormal rows spanning the constraints, columns (Ψ₀, Ψ₁, Ψ'₀, Ψ'₁)
    let rows = column_space(&pair.joined().adjoint(), RANK_TOL).adjoint();
    if rows.nrows() != 2 {
        return None;
    }
    let end = |own: [usize; 2], other: [usize; 2]| -> Option<EndCondition> {
        let other_block = CMat::from_fn(2, 2, |i, k| rows[(i, other[k])]);
        let y = null_space(&other_block.adjoint(), 1e-9);
        if y.ncols() != 1 {
            return None;
        }
        let y = y.adjoint();
        let p = (0..2)
            .map(|i| y[(0, i)] * rows[(i, own[0])])
            .sum::<crate::linalg::C64>();
        let q = (0..2)
            .map(|i| y[(0, i)] * rows[(i, own[1])])
            .sum::<crate::linalg::C64>();
        let scale = p.norm().max(q.norm());
        if q.norm() < 1e-9 * scale {
            Some(EndCondition::Dirichlet)
        } else if p.norm() < 1e-9 * scale {
            Some(EndCondition::Neumann)
        } else {
            let coef = -p / q;
            (coef.im.abs() < 1e-9 * coef.norm().max(1.0)).then_some(EndCondition::Robin(coef.re))
        }
    };
    let start = end([0, 2], [1, 3])?;
    let finish = end([1, 3], [0, 2])?;
    let rebuilt = segment(1.0, start, finish).ok()?;
    conditions_equivalent(rebuilt.coupling(), pair)
        .ok()?
        .then_some((start, finish))
}
