//! The JSON problem file and its assembly into a graph, a group action and irreps.
//!
//! Complex numbers are `[re, im]` pairs and matrices are arrays of rows. Permutations
//! are 0-based image lists: `[1, 0, 2]` swaps the first two edges.

use std::path::Path;
use std::sync::Arc;

use quotient_graph::graph::{EdgeEnd, VertexCoupling};
use quotient_graph::linalg::{c, CMat};
use quotient_graph::{
    BuiltinGroup, CouplingPair, FiniteGroup, MetricGraph, Permutation, Representation, ScanOptions, SymmetryAction,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub type ComplexJson = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexJson>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub edges: Vec<EdgeSpec>,
    pub coupling: CouplingSpec,
    pub group: GroupSpec,
    #[serde(default)]
    pub irreps: IrrepSpec,
    pub scan: ScanSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingSpec {
    Global {
        #[serde(rename = "A")]
        a: MatrixJson,
        #[serde(rename = "B")]
        b: MatrixJson,
    },
    Vertices(Vec<VertexSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub edge_ends: Vec<(usize, EndName)>,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndName {
    Start,
    Finish,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    /// `"S3"`, `"C3"` or `"Cn:n"`, acting on the first edges and fixing the rest.
    Builtin(String),
    /// Generating permutations of the edges.
    Generators(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IrrepSpec {
    #[default]
    Builtin,
    Explicit(Vec<ExplicitIrrep>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitIrrep {
    pub label: String,
    pub matrices: Vec<ElementMatrix>,
}

/// The matrix of one group element, keyed by the element's permutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementMatrix {
    pub element: Vec<usize>,
    pub matrix: MatrixJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub k_min: f64,
    pub k_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem files serialize");
        s.push('\n');
        s
    }
}

pub fn matrix_from_json(m: &MatrixJson, what: &str) -> Result<CMat, CliError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(CliError::Schema(format!("{what}: rows have different lengths")));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| c(m[i][j][0], m[i][j][1])))
}

pub fn matrix_to_json(m: &CMat) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// A problem file together with the objects it describes.
#[derive(Debug, Clone)]
pub struct Problem {
    pub file: ProblemFile,
    /// `sha256:<hex>` of the raw input bytes.
    pub digest: String,
    pub graph: MetricGraph,
    pub action: SymmetryAction,
    pub irreps: Vec<Representation>,
}

impl Problem {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let file = ProblemFile::parse(text)?;
        let digest = format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())));
        Self::assemble(file, digest)
    }

    pub fn assemble(file: ProblemFile, digest: String) -> Result<Self, CliError> {
        let schema = |e: quotient_graph::Error| CliError::Schema(e.to_string());
        let edge_count = file.edges.len();
        let lengths: Vec<f64> = file.edges.iter().map(|e| e.length).collect();
        let coupling = assemble_coupling(&file.coupling, edge_count)?;
        let graph = MetricGraph::new(lengths, coupling).map_err(schema)?;

        let (action, builtin) = match &file.group {
            GroupSpec::Builtin(name) => {
                let builtin = BuiltinGroup::parse(name).map_err(schema)?;
                (
                    SymmetryAction::padded(builtin.group(), edge_count).map_err(schema)?,
                    Some(builtin),
                )
            }
            GroupSpec::Generators(gens) => {
                let perms = gens
                    .iter()
                    .map(|g| {
                        if g.len() != edge_count {
                            return Err(CliError::Schema(format!(
                                "generator {g:?} must permute all {edge_count} edges"
                            )));
                        }
                        Permutation::new(g.clone()).map_err(schema)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let group = FiniteGroup::from_generators(edge_count, &perms).map_err(schema)?;
                (SymmetryAction::natural(Arc::new(group)), None)
            }
        };

        let group = action.group().clone();
        let irreps = match &file.irreps {
            IrrepSpec::Builtin => builtin_irreps(&group, builtin)?,
            IrrepSpec::Explicit(list) => list
                .iter()
                .map(|irrep| explicit_irrep(&group, irrep))
                .collect::<Result<_, _>>()?,
        };
        Ok(Self {
            file,
            digest,
            graph,
            action,
            irreps,
        })
    }

    pub fn scan(&self) -> ScanSpec {
        self.file.scan
    }

    pub fn scan_options(&self, threads: usize) -> ScanOptions {
        ScanOptions {
            step: self.file.scan.step,
            threads,
        }
    }
}

fn assemble_coupling(spec: &CouplingSpec, edge_count: usize) -> Result<CouplingPair, CliError> {
    let schema = |e: quotient_graph::Error| CliError::Schema(e.to_string());
    match spec {
        CouplingSpec::Global { a, b } => {
            let a = matrix_from_json(a, "coupling A")?;
            let b = matrix_from_json(b, "coupling B")?;
            let n = 2 * edge_count;
            if a.shape() != (n, n) || b.shape() != (n, n) {
                return Err(CliError::Schema(format!(
                    "{edge_count} edges need {n}x{n} coupling matrices, got {:?} and {:?}",
                    a.shape(),
                    b.shape()
                )));
            }
            CouplingPair::new(a, b).map_err(schema)
        }
        CouplingSpec::Vertices(vertices) => {
            let blocks = vertices
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    Ok(VertexCoupling {
                        endpoints: v
                            .edge_ends
                            .iter()
                            .map(|&(e, end)| {
                                (
                                    e,
                                    if end == EndName::Start {
                                        EdgeEnd::Start
                                    } else {
                                        EdgeEnd::Finish
                                    },
                                )
                            })
                            .collect(),
                        a: matrix_from_json(&v.a, &format!("vertex {i} A"))?,
                        b: matrix_from_json(&v.b, &format!("vertex {i} B"))?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            CouplingPair::from_vertices(edge_count, &blocks).map_err(schema)
        }
    }
}

/// Irreps shipped with the library, for builtin groups or generated groups equal to one.
fn builtin_irreps(group: &Arc<FiniteGroup>, builtin: Option<BuiltinGroup>) -> Result<Vec<Representation>, CliError> {
    if group.order() == 1 {
        return Ok(vec![Representation::trivial(group.clone())]);
    }
    let candidates = builtin
        .map(|b| vec![b])
        .unwrap_or_else(|| vec![BuiltinGroup::S3, BuiltinGroup::Cyclic(group.order())]);
    candidates
        .into_iter()
        .find(|b| b.matches(group))
        .ok_or_else(|| {
            CliError::Schema(format!(
                "no builtin irreps for this group of order {} on {} edges; list them under \"irreps\": {{\"explicit\": …}}",
                group.order(),
                group.degree()
            ))
        })?
        .irreps_on(group)
        .map_err(|e| CliError::Schema(e.to_string()))
}

fn explicit_irrep(group: &Arc<FiniteGroup>, irrep: &ExplicitIrrep) -> Result<Representation, CliError> {
    let mut matrices = Vec::with_capacity(group.order());
    for p in group.elements() {
        let entry = irrep.matrices.iter().find(|m| m.element == p.images()).ok_or_else(|| {
            CliError::Schema(format!(
                "irrep {}: no matrix for group element {:?}",
                irrep.label,
                p.images()
            ))
        })?;
        matrices.push(matrix_from_json(&entry.matrix, &format!("irrep {}", irrep.label))?);
    }
    if irrep.matrices.len() != group.order() {
        return Err(CliError::Schema(format!(
            "irrep {}: {} matrices for a group of order {}",
            irrep.label,
            irrep.matrices.len(),
            group.order()
        )));
    }
    Representation::new(group.clone(), irrep.label.clone(), matrices).map_err(|e| CliError::Schema(e.to_string()))
}
