//! Human-readable rendering. Machine output never goes through here.

use std::f64::consts::PI;

use quotient_graph::graph::EndCondition;

const SYMBOLIC_TOL: f64 = 1e-9;

/// A short symbolic form of `x` for multiples of π/2, √3 and thirds, or `None`.
pub fn symbolic(x: f64) -> Option<String> {
    let sign = if x < 0.0 { "-" } else { "" };
    let a = x.abs();
    let near = |v: f64| (a - v).abs() < SYMBOLIC_TOL;
    if near(a.round()) {
        return Some(format!("{}", x.round() as i64));
    }
    let halves = (2.0 * a / PI).round();
    if (1.0..=400.0).contains(&halves) && near(halves * PI / 2.0) {
        let n = halves as i64;
        let body = match (n % 2 == 0, n) {
            (true, 2) => "π".to_string(),
            (true, _) => format!("{}π", n / 2),
            (false, 1) => "π/2".to_string(),
            (false, _) => format!("{n}π/2"),
        };
        return Some(format!("{sign}{body}"));
    }
    let root3 = 3f64.sqrt();
    let m = (a / root3).round();
    if (1.0..=10.0).contains(&m) && near(m * root3) {
        let body = if m == 1.0 {
            "√3".to_string()
        } else {
            format!("{}√3", m as i64)
        };
        return Some(format!("{sign}{body}"));
    }
    let thirds = (3.0 * a).round();
    if thirds >= 1.0 && near(thirds / 3.0) {
        return Some(format!("{sign}{}/3", thirds as i64));
    }
    None
}

/// `0.333333 (1/3)` style: six decimals, plus the symbolic form when there is one.
pub fn number(x: f64) -> String {
    match symbolic(x) {
        Some(s) if (x - x.round()).abs() >= SYMBOLIC_TOL => format!("{x:.6} ({s})"),
        _ => format!("{x:.6}"),
    }
}

pub fn end_condition(cond: &EndCondition) -> String {
    match cond {
        EndCondition::Dirichlet => "Dirichlet".into(),
        EndCondition::Neumann => "Neumann".into(),
        EndCondition::Robin(coef) => format!("Robin, coefficient {}", number(*coef)),
    }
}
