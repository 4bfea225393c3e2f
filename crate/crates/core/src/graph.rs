//! Metric graphs with global vertex couplings `A Ψ + B Ψ' = 0`.
//!
//! Edge `j` is the interval `(0, ℓ_j)`. Boundary traces are interleaved by edge:
//!
//! ```text
//! Ψ  = (f₁(0), f₁(ℓ₁), f₂(0), f₂(ℓ₂), …)
//! Ψ' = (f₁'(0), −f₁'(ℓ₁), f₂'(0), −f₂'(ℓ₂), …)
//! ```
//!
//! so endpoint `(j, start)` is trace index `2j` and `(j, finish)` is `2j + 1`, and
//! every derivative points out of its edge.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation};
use crate::linalg::{c, from_real_rows, hstack, identity, kron, max_abs, null_projector, rank, CMat, I, ONE};
use crate::rep::{permutation_matrix, Representation};
use crate::tol::{RANK_TOL, TOL_COUPLING};

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPair {
    pub a: CMat,
    pub b: CMat,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingReport {
    /// `max |A B† − B A†|`.
    pub hermiticity_residual: f64,
    pub hermitian: bool,
    /// Numerical rank of `[A B]`.
    pub rank: usize,
    pub required_rank: usize,
    pub full_rank: bool,
}

impl CouplingReport {
    pub fn passed(&self) -> bool {
        self.hermitian && self.full_rank
    }
}

impl CouplingPair {
    pub fn new(a: CMat, b: CMat) -> Result<Self> {
        let pair = Self { a, b };
        pair.check_shape()?;
        Ok(pair)
    }

    fn check_shape(&self) -> Result<()> {
        let (n, m) = self.a.shape();
        if n != m || self.b.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "A is {:?}, B is {:?}; both must be the same square size",
                self.a.shape(),
                self.b.shape()
            )));
        }
        if n == 0 || n % 2 != 0 {
            return Err(Error::DimensionMismatch(format!("coupling size {n} is not 2|E|")));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.a.nrows()
    }

    /// `[A B]`.
    pub fn joined(&self) -> CMat {
        hstack(&self.a, &self.b)
    }

    /// Hermiticity of `A B†` and maximal rank of `[A B]`.
    pub fn validate(&self) -> Result<CouplingReport> {
        self.check_shape()?;
        let residual = max_abs(&(&self.a * self.b.adjoint() - &self.b * self.a.adjoint()));
        let n = self.size();
        let r = rank(&self.joined(), RANK_TOL);
        Ok(CouplingReport {
            hermiticity_residual: residual,
            hermitian: residual < TOL_COUPLING,
            rank: r,
            required_rank: n,
            full_rank: r == n,
        })
    }

    /// Orthogonal projector onto the solution set `{(Ψ, Ψ') : AΨ + BΨ' = 0}` in `ℂ^{2n}`.
    pub fn solution_projector(&self) -> CMat {
        null_projector(&self.joined(), RANK_TOL)
    }

    /// The same constraints with both blocks right-multiplied by `m`.
    pub fn right_mul(&self, m: &CMat) -> Self {
        Self {
            a: &self.a * m,
            b: &self.b * m,
        }
    }

    /// Assembles global matrices from per-vertex blocks. Each vertex lists its
    /// endpoints as `(edge, end)` in the column order of its local `A_v`, `B_v`.
    /// Vertex rows are stacked in order of each vertex's smallest endpoint index.
    pub fn from_vertices(edge_count: usize, vertices: &[VertexCoupling]) -> Result<Self> {
        let n = 2 * edge_count;
        let mut used = vec![false; n];
        for v in vertices {
            let d = v.endpoints.len();
            if d == 0 || v.a.shape() != (d, d) || v.b.shape() != (d, d) {
                return Err(Error::DimensionMismatch(format!(
                    "vertex with {d} endpoints needs {d}x{d} blocks, got {:?} and {:?}",
                    v.a.shape(),
                    v.b.shape()
                )));
            }
            for &(edge, end) in &v.endpoints {
                let idx = endpoint_index(edge, end);
                if edge >= edge_count || used[idx] {
                    return Err(Error::InvalidGraph(format!(
                        "endpoint ({edge}, {end:?}) missing or used twice"
                    )));
                }
                used[idx] = true;
            }
        }
        if let Some(idx) = used.iter().position(|u| !u) {
            return Err(Error::InvalidGraph(format!("endpoint {idx} belongs to no vertex")));
        }

        let mut order: Vec<&VertexCoupling> = vertices.iter().collect();
        order.sort_by_key(|v| v.endpoints.iter().map(|&(e, s)| endpoint_index(e, s)).min());
        let mut a = CMat::zeros(n, n);
        let mut b = CMat::zeros(n, n);
        let mut row = 0;
        for v in order {
            for i in 0..v.endpoints.len() {
                for (j, &(edge, end)) in v.endpoints.iter().enumerate() {
                    let col = endpoint_index(edge, end);
                    a[(row + i, col)] = v.a[(i, j)];
                    b[(row + i, col)] = v.b[(i, j)];
                }
            }
            row += v.endpoints.len();
        }
        Self::new(a, b)
    }
}

/// Which end of the interval `(0, ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEnd {
    Start,
    Finish,
}

pub fn endpoint_index(edge: usize, end: EdgeEnd) -> usize {
    2 * edge + usize::from(end == EdgeEnd::Finish)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexCoupling {
    pub endpoints: Vec<(usize, EdgeEnd)>,
    pub a: CMat,
    pub b: CMat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    edge_lengths: Vec<f64>,
    coupling: CouplingPair,
}

impl MetricGraph {
    pub fn new(edge_lengths: Vec<f64>, coupling: CouplingPair) -> Result<Self> {
        if edge_lengths.is_empty() {
            return Err(Error::InvalidGraph("a graph needs at least one edge".into()));
        }
        if let Some(l) = edge_lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::InvalidGraph(format!("edge length {l} is not positive")));
        }
        coupling.check_shape()?;
        if coupling.size() != 2 * edge_lengths.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} edges need {}x{} coupling matrices, got {}",
                edge_lengths.len(),
                2 * edge_lengths.len(),
                2 * edge_lengths.len(),
                coupling.size()
            )));
        }
        Ok(Self { edge_lengths, coupling })
    }

    pub fn edge_count(&self) -> usize {
        self.edge_lengths.len()
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    pub fn coupling(&self) -> &CouplingPair {
        &self.coupling
    }

    pub fn min_length(&self) -> f64 {
        self.edge_lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Relabels edges: new edge `i` is old edge `perm[i]`; coupling columns follow
    /// and rows are permuted the same way.
    pub fn relabeled(&self, perm: &Permutation) -> Result<Self> {
        let lengths = (0..self.edge_count())
            .map(|i| self.edge_lengths[perm.apply(i)])
            .collect();
        let p = hat_matrix(&permutation_matrix(perm));
        let c = &self.coupling;
        Self::new(
            lengths,
            CouplingPair::new(p.transpose() * &c.a * &p, p.transpose() * &c.b * &p)?,
        )
    }
}

/// Boundary condition at one end of a segment, with `Ψ'` the outgoing derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndCondition {
    Dirichlet,
    Neumann,
    /// `Ψ' = coefficient · Ψ`; at `x = ℓ` this reads `−f'(ℓ) = coefficient · f(ℓ)`.
    Robin(f64),
}

/// A single edge `(0, ℓ)` with decoupled end conditions.
pub fn segment(length: f64, start: EndCondition, finish: EndCondition) -> Result<MetricGraph> {
    let mut a = CMat::zeros(2, 2);
    let mut b = CMat::zeros(2, 2);
    for (i, cond) in [start, finish].into_iter().enumerate() {
        match cond {
            EndCondition::Dirichlet => a[(i, i)] = ONE,
            EndCondition::Neumann => b[(i, i)] = ONE,
            EndCondition::Robin(coef) => {
                a[(i, i)] = c(coef, 0.0);
                b[(i, i)] = -ONE;
            }
        }
    }
    MetricGraph::new(vec![length], CouplingPair::new(a, b)?)
}

/// Rows 1–3 impose Neumann at the loose ends (`x = 0`); rows 4–6 couple the three
/// `x = ℓ` ends at the centre.
fn star_loose_end_rows(b: &mut CMat) {
    b[(0, 0)] = ONE;
    b[(1, 2)] = ONE;
    b[(2, 4)] = ONE;
}

/// Three-edge star with Neumann loose ends and continuity plus vanishing
/// derivative sum at the centre.
pub fn star_graph_standard(length: f64) -> Result<MetricGraph> {
    star_graph_delta(length, 0.0)
}

/// As [`star_graph_standard`] but with derivative sum equal to `alpha · f(ℓ)`.
pub fn star_graph_delta(length: f64, alpha: f64) -> Result<MetricGraph> {
    if !alpha.is_finite() {
        return Err(Error::InvalidGraph(format!("coupling strength {alpha} is not finite")));
    }
    let mut a = CMat::zeros(6, 6);
    let mut b = CMat::zeros(6, 6);
    star_loose_end_rows(&mut b);
    a[(3, 1)] = ONE;
    a[(3, 3)] = -ONE;
    a[(4, 1)] = ONE;
    a[(4, 5)] = -ONE;
    a[(5, 1)] = c(-alpha, 0.0);
    b[(5, 1)] = ONE;
    b[(5, 3)] = ONE;
    b[(5, 5)] = ONE;
    MetricGraph::new(vec![length; 3], CouplingPair::new(a, b)?)
}

/// Three-edge star whose centre has `A_v = U − I`, `B_v = i(U + I)` with the
/// cyclic `U = [[0,1,0],[0,0,1],[1,0,0]]`.
pub fn star_graph_preferred_orientation(length: f64) -> Result<MetricGraph> {
    let u = from_real_rows(3, 3, &[0., 1., 0., 0., 0., 1., 1., 0., 0.]);
    let av = &u - identity(3);
    let bv = (&u + identity(3)) * I;
    let mut a = CMat::zeros(6, 6);
    let mut b = CMat::zeros(6, 6);
    star_loose_end_rows(&mut b);
    for i in 0..3 {
        for j in 0..3 {
            a[(3 + i, 2 * j + 1)] = av[(i, j)];
            b[(3 + i, 2 * j + 1)] = bv[(i, j)];
        }
    }
    MetricGraph::new(vec![length; 3], CouplingPair::new(a, b)?)
}

/// `M ⊗ I₂`: lifts an edge-space operator to endpoint traces.
pub fn hat_matrix(m: &CMat) -> CMat {
    kron(m, &identity(2))
}

/// A group acting on edge indices through `edge_action[g]`.
#[derive(Debug, Clone)]
pub struct SymmetryAction {
    group: Arc<FiniteGroup>,
    edge_action: Vec<Permutation>,
}

impl SymmetryAction {
    /// Checks the action axioms: identity acts trivially and `(gh)·e = g·(h·e)`.
    pub fn new(group: Arc<FiniteGroup>, edge_action: Vec<Permutation>) -> Result<Self> {
        if edge_action.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} edge permutations for a group of order {}",
                edge_action.len(),
                group.order()
            )));
        }
        let n = edge_action[0].degree();
        if edge_action.iter().any(|p| p.degree() != n) {
            return Err(Error::InvalidPermutation(
                "edge permutations act on different edge counts".into(),
            ));
        }
        if !edge_action[group.identity()].is_identity() {
            return Err(Error::InvalidPermutation("identity element must fix every edge".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if edge_action[group.mul(a, b)] != edge_action[a].compose(&edge_action[b]) {
                    return Err(Error::InvalidPermutation(format!(
                        "edge action is not compatible with the product {} * {}",
                        group.element(a),
                        group.element(b)
                    )));
                }
            }
        }
        Ok(Self { group, edge_action })
    }

    /// A permutation group acting on edges by its own permutations.
    pub fn natural(group: Arc<FiniteGroup>) -> Self {
        let edge_action = group.elements().to_vec();
        Self { group, edge_action }
    }

    /// Acts on `edge_count` edges, fixing those beyond the group's degree.
    pub fn padded(group: Arc<FiniteGroup>, edge_count: usize) -> Result<Self> {
        if edge_count < group.degree() {
            return Err(Error::DimensionMismatch(format!(
                "cannot act on {edge_count} edges with a group on {} points",
                group.degree()
            )));
        }
        let perms = group.elements().iter().map(|p| p.extended(edge_count)).collect();
        Self::new(group, perms)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn edge_action(&self) -> &[Permutation] {
        &self.edge_action
    }

    pub fn edge_count(&self) -> usize {
        self.edge_action[0].degree()
    }

    /// `π(g)` with `π(g) e_j = e_{g·j}`.
    pub fn permutation_representation(&self) -> Representation {
        Representation::from_permutations(self.group.clone(), "pi", &self.edge_action)
            .expect("a valid action gives a representation")
    }

    /// Orbits of edges, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.edge_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for j in 0..n {
            if seen[j] {
                continue;
            }
            let mut orbit: Vec<usize> = self.edge_action.iter().map(|p| p.apply(j)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &i in &orbit {
                seen[i] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    /// `(g, j, i)` with `e_i = g·e_j` but `ℓ_i ≠ ℓ_j`.
    pub length_violation: Option<(Permutation, usize, usize)>,
    /// Group elements whose lifted action moves the solution space.
    pub coupling_violations: Vec<Permutation>,
    pub max_projector_deviation: f64,
}

impl SymmetryReport {
    pub fn is_symmetric(&self) -> bool {
        self.length_violation.is_none() && self.coupling_violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if let Some((g, j, i)) = &self.length_violation {
            return Err(Error::NotSymmetric {
                element: g.to_string(),
                reason: format!("edge {j} is mapped to edge {i} of a different length"),
            });
        }
        if let Some(g) = self.coupling_violations.first() {
            return Err(Error::NotSymmetric {
                element: g.to_string(),
                reason: "coupling conditions are not invariant".into(),
            });
        }
        Ok(self)
    }
}

/// π-symmetry: equal lengths along orbits and, for every `g`, the solution space of
/// `[A B]` equals that of `[A π̂(g), B π̂(g)]` (compared through their projectors).
pub fn check_pi_symmetric(graph: &MetricGraph, action: &SymmetryAction) -> Result<SymmetryReport> {
    if action.edge_count() != graph.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "action permutes {} edges, graph has {}",
            action.edge_count(),
            graph.edge_count()
        )));
    }
    let lengths = graph.edge_lengths();
    let mut length_violation = None;
    'outer: for (idx, p) in action.edge_action().iter().enumerate() {
        for (j, &lj) in lengths.iter().enumerate() {
            let i = p.apply(j);
            if (lengths[i] - lj).abs() > TOL_COUPLING * lj.max(1.0) {
                length_violation = Some((action.group().element(idx).clone(), j, i));
                break 'outer;
            }
        }
    }

    let base = graph.coupling().solution_projector();
    let mut coupling_violations = Vec::new();
    let mut max_dev: f64 = 0.0;
    for (idx, p) in action.edge_action().iter().enumerate() {
        let moved = graph.coupling().right_mul(&hat_matrix(&permutation_matrix(p)));
        let dev = max_abs(&(moved.solution_projector() - &base));
        max_dev = max_dev.max(dev);
        if dev > TOL_COUPLING {
            coupling_violations.push(action.group().element(idx).clone());
        }
    }
    Ok(SymmetryReport {
        length_violation,
        coupling_violations,
        max_projector_deviation: max_dev,
    })
}

/// Actions here are permutations of directed edge indices, which cannot send an
/// edge to its own reverse.
pub fn detect_reversed_edges(_action: &SymmetryAction) -> bool {
    false
}
