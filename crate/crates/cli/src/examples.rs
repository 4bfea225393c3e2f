//! Bundled three-edge star problems with unit edges and the window `(0, 20]`.

use crate::error::CliError;
use crate::problem::{
    CouplingSpec, EdgeSpec, EndName, GroupSpec, IrrepSpec, MatrixJson, ProblemFile, ScanSpec, VertexSpec,
};

pub const EXAMPLE_NAMES: [&str; 3] = ["standard", "delta", "preferred"];

const LENGTH: f64 = 1.0;
const DELTA_ALPHA: f64 = 1.0;

pub fn example(name: &str) -> Result<ProblemFile, CliError> {
    match name {
        "standard" => Ok(star_problem(centre_delta(0.0), "S3")),
        "delta" => Ok(star_problem(centre_delta(DELTA_ALPHA), "S3")),
        "preferred" => Ok(star_problem(centre_preferred(), "C3")),
        other => Err(CliError::UnknownExample(other.to_string())),
    }
}

fn real(rows: &[&[f64]]) -> MatrixJson {
    rows.iter().map(|r| r.iter().map(|&x| [x, 0.0]).collect()).collect()
}

/// Neumann at each loose end `x = 0`; the centre joins the three `x = ℓ` ends.
fn star_problem(centre: VertexSpec, group: &str) -> ProblemFile {
    let mut vertices: Vec<VertexSpec> = (0..3)
        .map(|e| VertexSpec {
            edge_ends: vec![(e, EndName::Start)],
            a: real(&[&[0.0]]),
            b: real(&[&[1.0]]),
        })
        .collect();
    vertices.push(centre);
    ProblemFile {
        edges: vec![EdgeSpec { length: LENGTH }; 3],
        coupling: CouplingSpec::Vertices(vertices),
        group: GroupSpec::Builtin(group.to_string()),
        irreps: IrrepSpec::Builtin,
        scan: ScanSpec {
            k_min: 0.0,
            k_max: 20.0,
            step: None,
        },
    }
}

/// Continuity plus derivative sum `= α f`; `α = 0` is the standard coupling.
fn centre_delta(alpha: f64) -> VertexSpec {
    VertexSpec {
        edge_ends: (0..3).map(|e| (e, EndName::Finish)).collect(),
        a: real(&[&[1.0, -1.0, 0.0], &[1.0, 0.0, -1.0], &[-alpha, 0.0, 0.0]]),
        b: real(&[&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]]),
    }
}

/// `A = U − I`, `B = i(U + I)` with the cyclic permutation matrix `U`.
fn centre_preferred() -> VertexSpec {
    let u = [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]];
    let id = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    VertexSpec {
        edge_ends: (0..3).map(|e| (e, EndName::Finish)).collect(),
        a: (0..3)
            .map(|i| (0..3).map(|j| [u[i][j] - id(i, j), 0.0]).collect())
            .collect(),
        b: (0..3)
            .map(|i| (0..3).map(|j| [0.0, u[i][j] + id(i, j)]).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Problem;
    use quotient_graph::graph::{star_graph_delta, star_graph_preferred_orientation, star_graph_standard};
    use quotient_graph::quotient::conditions_equivalent;

    #[test]
    fn vertex_files_match_library_stars() {
        let expected = [
            ("standard", star_graph_standard(1.0).unwrap()),
            ("delta", star_graph_delta(1.0, DELTA_ALPHA).unwrap()),
            ("preferred", star_graph_preferred_orientation(1.0).unwrap()),
        ];
        for (name, graph) in expected {
            let p = Problem::assemble(example(name).unwrap(), String::new()).unwrap();
            assert_eq!(p.graph.edge_lengths(), graph.edge_lengths());
            assert!(
                conditions_equivalent(p.graph.coupling(), graph.coupling()).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(matches!(example("square"), Err(CliError::UnknownExample(_))));
    }
}
