//! The machine-readable result document written by `--output`.

use quotient_graph::graph::EndCondition;
use quotient_graph::quotient::QuotientGraph;
use quotient_graph::spectral::{PairingRow, VerificationReport};
use quotient_graph::tol::K_MATCH_TOL;
use quotient_graph::Spectrum;
use serde::{Deserialize, Serialize};

use crate::problem::{matrix_to_json, MatrixJson};

pub const TOOL_NAME: &str = "qg";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    pub quotients: Vec<QuotientBlock>,
    /// Irreps with an empty kernel space.
    #[serde(default)]
    pub skipped: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectra: Option<SpectraBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientBlock {
    pub irrep: String,
    pub r: usize,
    pub orbit_dims: Vec<usize>,
    pub edge_lengths: Vec<f64>,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    /// Present when the quotient is one edge with recognized end conditions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<[EndBlock; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum EndBlock {
    Dirichlet,
    Neumann,
    Robin { coefficient: f64 },
}

impl From<EndCondition> for EndBlock {
    fn from(c: EndCondition) -> Self {
        match c {
            EndCondition::Dirichlet => Self::Dirichlet,
            EndCondition::Neumann => Self::Neumann,
            EndCondition::Robin(coefficient) => Self::Robin { coefficient },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraBlock {
    pub window: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full: Option<SpectrumBlock>,
    #[serde(default)]
    pub quotients: Vec<LabeledSpectrum>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBlock {
    pub entries: Vec<EntryBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_modes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntryBlock {
    pub k: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSpectrum {
    pub irrep: String,
    pub r: usize,
    pub spectrum: SpectrumBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationBlock {
    pub verdict: Verdict,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_zero_modes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_zero_modes: Option<usize>,
    pub pairs: Vec<PairBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full: Option<EntryBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<EntryBlock>,
    /// `(irrep, multiplicity)` contributions to the quotient root.
    #[serde(default)]
    pub sources: Vec<(String, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_k: Option<f64>,
    pub at_boundary: bool,
    pub matches: bool,
}

impl ResultDocument {
    pub fn new(input_digest: &str) -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: input_digest.to_string(),
            quotients: Vec::new(),
            skipped: Vec::new(),
            spectra: None,
            verification: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result documents serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, crate::CliError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl From<&QuotientGraph> for QuotientBlock {
    fn from(q: &QuotientGraph) -> Self {
        Self {
            irrep: q.irrep_label.clone(),
            r: q.multiplicity,
            orbit_dims: q.orbit_dims.clone(),
            edge_lengths: q.edge_lengths.clone(),
            a: matrix_to_json(&q.coupling.a),
            b: matrix_to_json(&q.coupling.b),
            boundary: q.segment_ends().map(|(s, f)| [s.into(), f.into()]),
        }
    }
}

impl From<&Spectrum> for SpectrumBlock {
    fn from(s: &Spectrum) -> Self {
        Self {
            entries: s
                .entries
                .iter()
                .map(|e| EntryBlock {
                    k: e.k,
                    multiplicity: e.multiplicity,
                })
                .collect(),
            zero_modes: s.zero_modes,
        }
    }
}

impl From<&PairingRow> for PairBlock {
    fn from(row: &PairingRow) -> Self {
        Self {
            full: row.full.map(|e| EntryBlock {
                k: e.k,
                multiplicity: e.multiplicity,
            }),
            quotient: row.quotient.as_ref().map(|q| EntryBlock {
                k: q.k,
                multiplicity: q.multiplicity,
            }),
            sources: row.quotient.as_ref().map(|q| q.sources.clone()).unwrap_or_default(),
            delta_k: row.delta_k(),
            at_boundary: row.at_boundary,
            matches: row.matches(),
        }
    }
}

impl From<&VerificationReport> for VerificationBlock {
    fn from(report: &VerificationReport) -> Self {
        Self {
            verdict: if report.passed() { Verdict::Pass } else { Verdict::Fail },
            tolerance: K_MATCH_TOL,
            full_zero_modes: report.full_zero_modes,
            quotient_zero_modes: report.quotient_zero_modes,
            pairs: report.rows.iter().map(PairBlock::from).collect(),
        }
    }
}
