//! The `qg` subcommands. Each writes its human-readable report to `out` and
//! returns the process exit code.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use quotient_graph::graph::check_pi_symmetric;
use quotient_graph::quotient::{build_all_quotients, QuotientGraph};
use quotient_graph::spectral::{direct_sum_spectrum, eigenvalues_with_samples, verify_theorem, DetSample};
use quotient_graph::tol::K_MATCH_TOL;
use quotient_graph::Spectrum;

use crate::document::{LabeledSpectrum, QuotientBlock, ResultDocument, SpectraBlock, SpectrumBlock, VerificationBlock};
use crate::error::CliError;
use crate::examples::example;
use crate::problem::Problem;
use crate::render;

pub type CmdResult = Result<u8, CliError>;

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Coupling and symmetry checks; exit 0 iff both pass.
pub fn validate(problem: &Problem, out: &mut dyn Write) -> CmdResult {
    let mut text = String::new();
    let coupling_ok = coupling_report(problem, &mut text)?;
    let sym = check_pi_symmetric(&problem.graph, &problem.action)?;
    let group = problem.action.group();
    if sym.is_symmetric() {
        writeln!(
            text,
            "symmetry: PASS ({} group elements, max projector deviation {:.1e})",
            group.order(),
            sym.max_projector_deviation
        )
        .unwrap();
    } else {
        if let Some((g, j, i)) = &sym.length_violation {
            writeln!(
                text,
                "symmetry: FAIL: element {g} maps edge {j} to edge {i} of a different length"
            )
            .unwrap();
        }
        for g in &sym.coupling_violations {
            writeln!(
                text,
                "symmetry: FAIL: element {g} does not preserve the coupling conditions"
            )
            .unwrap();
        }
    }
    emit(out, &text)?;
    Ok(if coupling_ok && sym.is_symmetric() { 0 } else { 1 })
}

fn coupling_report(problem: &Problem, text: &mut String) -> Result<bool, CliError> {
    let report = problem.graph.coupling().validate()?;
    if report.passed() {
        writeln!(
            text,
            "coupling: PASS (A B† Hermitian, residual {:.1e}; [A B] has maximal rank {})",
            report.hermiticity_residual, report.rank
        )
        .unwrap();
    }
    if !report.hermitian {
        writeln!(
            text,
            "coupling: FAIL: A B† is not Hermitian (residual {:.3e})",
            report.hermiticity_residual
        )
        .unwrap();
    }
    if !report.full_rank {
        writeln!(
            text,
            "coupling: FAIL: [A B] does not have maximal rank (rank {} of {})",
            report.rank, report.required_rank
        )
        .unwrap();
    }
    Ok(report.passed())
}

/// Rejects problems whose coupling is not self-adjoint.
fn require_valid_coupling(problem: &Problem) -> Result<(), CliError> {
    let mut text = String::new();
    if coupling_report(problem, &mut text)? {
        Ok(())
    } else {
        Err(CliError::Validation(text.trim_end().to_string()))
    }
}

pub fn quotient(problem: &Problem, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    require_valid_coupling(problem)?;
    let set = build_all_quotients(&problem.graph, &problem.action, &problem.irreps)?;
    let mut text = String::new();
    writeln!(
        text,
        "{:<12} {:>2}  {:<8} {:<12} boundary",
        "irrep", "r", "d_i", "lengths"
    )
    .unwrap();
    for q in &set.quotients {
        writeln!(
            text,
            "{:<12} {:>2}  {:<8} {:<12} {}",
            q.irrep_label,
            q.multiplicity,
            format!("{:?}", q.orbit_dims),
            q.edge_lengths
                .iter()
                .map(|l| format!("{l}"))
                .collect::<Vec<_>>()
                .join(","),
            boundary_label(q)
        )
        .unwrap();
    }
    for label in &set.skipped {
        writeln!(text, "{label:<12}  -  empty kernel space, no quotient").unwrap();
    }
    for q in &set.quotients {
        writeln!(text, "\n{} (copies: {}):", q.irrep_label, q.multiplicity).unwrap();
        write_matrix(&mut text, "A", &q.coupling.a);
        write_matrix(&mut text, "B", &q.coupling.b);
    }
    emit(out, &text)?;

    if let Some(path) = output {
        let mut doc = ResultDocument::new(&problem.digest);
        doc.quotients = set.quotients.iter().map(QuotientBlock::from).collect();
        doc.skipped = set.skipped.clone();
        write_file(path, &doc.to_json())?;
    }
    Ok(0)
}

fn boundary_label(q: &QuotientGraph) -> String {
    match q.segment_ends() {
        Some((start, finish)) => {
            format!(
                "start {}; finish {}",
                render::end_condition(&start),
                render::end_condition(&finish)
            )
        }
        None => format!("{} coupled edges", q.edge_count()),
    }
}

fn write_matrix(text: &mut String, name: &str, m: &quotient_graph::CMat) {
    for i in 0..m.nrows() {
        let lead = if i == 0 {
            format!("  {name} =")
        } else {
            "     ".to_string()
        };
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
                format!("{:>9.6}{:+.6}i", clean(z.re), clean(z.im))
            })
            .collect();
        writeln!(text, "{lead} [{}]", row.join("  ")).unwrap();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    Full,
    Quotients,
}

pub fn spectrum(
    problem: &Problem,
    mode: SpectrumMode,
    csv: Option<&Path>,
    output: Option<&Path>,
    threads: usize,
    out: &mut dyn Write,
) -> CmdResult {
    require_valid_coupling(problem)?;
    let scan = problem.scan();
    let opts = problem.scan_options(threads);
    let mut text = String::new();
    let mut doc = ResultDocument::new(&problem.digest);
    let mut spectra = SpectraBlock {
        window: [scan.k_min, scan.k_max],
        full: None,
        quotients: Vec::new(),
    };
    match mode {
        SpectrumMode::Full => {
            let (spec, samples) = eigenvalues_with_samples(&problem.graph, scan.k_min, scan.k_max, &opts)?;
            writeln!(
                text,
                "full graph, window ({}, {}], step {:.6}",
                scan.k_min,
                scan.k_max,
                opts.step_for(&problem.graph)
            )
            .unwrap();
            write_spectrum(&mut text, &spec);
            if let Some(path) = csv {
                write_file(path, &samples_csv(&samples))?;
            }
            spectra.full = Some(SpectrumBlock::from(&spec));
        }
        SpectrumMode::Quotients => {
            let set = build_all_quotients(&problem.graph, &problem.action, &problem.irreps)?;
            for q in &set.quotients {
                let graph = q.graph()?;
                let (spec, samples) = eigenvalues_with_samples(&graph, scan.k_min, scan.k_max, &opts)?;
                writeln!(
                    text,
                    "quotient {} (copies: {}), window ({}, {}]",
                    q.irrep_label, q.multiplicity, scan.k_min, scan.k_max
                )
                .unwrap();
                write_spectrum(&mut text, &spec);
                text.push('\n');
                if let Some(path) = csv {
                    write_file(&per_quotient_path(path, &q.irrep_label), &samples_csv(&samples))?;
                }
                spectra.quotients.push(LabeledSpectrum {
                    irrep: q.irrep_label.clone(),
                    r: q.multiplicity,
                    spectrum: SpectrumBlock::from(&spec),
                });
            }
            let sum = direct_sum_spectrum(&set.quotients, scan.k_min, scan.k_max, &opts)?;
            writeln!(text, "direct sum with multiplicities r(ρ)").unwrap();
            write_spectrum(&mut text, &sum);
            doc.quotients = set.quotients.iter().map(QuotientBlock::from).collect();
            doc.skipped = set.skipped;
        }
    }
    emit(out, &text)?;
    if let Some(path) = output {
        doc.spectra = Some(spectra);
        write_file(path, &doc.to_json())?;
    }
    Ok(0)
}

fn write_spectrum(text: &mut String, spec: &Spectrum) {
    if let Some(z) = spec.zero_modes {
        writeln!(text, "zero modes (k = 0): {z}").unwrap();
    }
    writeln!(text, "{:<22} {:>4}", "k", "mult").unwrap();
    for e in &spec.entries {
        let sym = render::symbolic(e.k).map(|s| format!("  {s}")).unwrap_or_default();
        writeln!(text, "{:<22} {:>4}{sym}", e.k, e.multiplicity).unwrap();
    }
}

/// `k,absdet,sigma_min` rows, LF terminated.
pub fn samples_csv(samples: &[DetSample]) -> String {
    let mut s = String::from("k,absdet,sigma_min\n");
    for d in samples {
        writeln!(s, "{},{},{}", d.k, d.abs_det, d.sigma_min).unwrap();
    }
    s
}

/// `dir/scan.csv` → `dir/scan.<label>.csv`.
pub fn per_quotient_path(path: &Path, label: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{label}.{ext}"))
}

pub fn verify(problem: &Problem, output: Option<&Path>, threads: usize, out: &mut dyn Write) -> CmdResult {
    require_valid_coupling(problem)?;
    let scan = problem.scan();
    let opts = problem.scan_options(threads);
    let report = verify_theorem(
        &problem.graph,
        &problem.action,
        &problem.irreps,
        scan.k_min,
        scan.k_max,
        &opts,
    )?;
    let mut text = String::new();
    writeln!(
        text,
        "window ({}, {}], step {:.6}, pairing tolerance {K_MATCH_TOL:e}",
        scan.k_min,
        scan.k_max,
        opts.step_for(&problem.graph)
    )
    .unwrap();
    let quotients: Vec<String> = report
        .quotients
        .quotients
        .iter()
        .map(|q| {
            format!(
                "{} (r = {}, {} edge{})",
                q.irrep_label,
                q.multiplicity,
                q.edge_count(),
                if q.edge_count() == 1 { "" } else { "s" }
            )
        })
        .collect();
    writeln!(text, "quotients: {}", quotients.join(", ")).unwrap();
    if !report.quotients.skipped.is_empty() {
        writeln!(text, "empty kernel: {}", report.quotients.skipped.join(", ")).unwrap();
    }
    if let (Some(f), Some(q)) = (report.full_zero_modes, report.quotient_zero_modes) {
        writeln!(
            text,
            "zero modes: full {f}, quotients {q}{}",
            if f == q { "" } else { "  MISMATCH" }
        )
        .unwrap();
    }
    writeln!(
        text,
        "{:<22} {:>4}  {:<22} {:>4}  {:<24} {:>9}",
        "k_full", "m", "k_quotient", "m", "irrep", "Δk"
    )
    .unwrap();
    let dash = || "-".to_string();
    for row in &report.rows {
        let (kf, mf) = row
            .full
            .map(|e| (format!("{}", e.k), e.multiplicity.to_string()))
            .unwrap_or_else(|| (dash(), dash()));
        let (kq, mq) = row
            .quotient
            .as_ref()
            .map(|q| (format!("{}", q.k), q.multiplicity.to_string()))
            .unwrap_or_else(|| (dash(), dash()));
        let sources = row
            .quotient
            .as_ref()
            .map(|q| {
                q.sources
                    .iter()
                    .map(|(l, m)| format!("{l}×{m}"))
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .unwrap_or_else(dash);
        let dk = row.delta_k().map(|d| format!("{d:.1e}")).unwrap_or_else(dash);
        let note = if row.at_boundary {
            "  (window edge, not counted)"
        } else if row.matches() {
            ""
        } else {
            "  MISMATCH"
        };
        writeln!(text, "{kf:<22} {mf:>4}  {kq:<22} {mq:>4}  {sources:<24} {dk:>9}{note}").unwrap();
    }
    let counted = report.rows.iter().filter(|r| !r.at_boundary).count();
    if report.passed() {
        writeln!(text, "verdict: PASS ({counted} roots paired)").unwrap();
    } else {
        writeln!(
            text,
            "verdict: FAIL ({} of {counted} roots unmatched)",
            report.mismatches().len()
        )
        .unwrap();
    }
    emit(out, &text)?;

    if let Some(path) = output {
        let mut doc = ResultDocument::new(&problem.digest);
        doc.quotients = report.quotients.quotients.iter().map(QuotientBlock::from).collect();
        doc.skipped = report.quotients.skipped.clone();
        doc.spectra = Some(SpectraBlock {
            window: [scan.k_min, scan.k_max],
            full: Some(SpectrumBlock::from(&report.full)),
            quotients: Vec::new(),
        });
        doc.verification = Some(VerificationBlock::from(&report));
        write_file(path, &doc.to_json())?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

/// Prints the named example, or writes it to `<dir>/<name>.json`.
pub fn examples(name: &str, write: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let json = example(name)?.to_json();
    match write {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            let path = dir.join(format!("{name}.json"));
            write_file(&path, &json)?;
            emit(out, &format!("wrote {}\n", path.display()))?;
        }
        None => emit(out, &json)?,
    }
    Ok(0)
}
