//! Matrix representations, characters and the multiplicity calculus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation};
use crate::linalg::{c, from_real_rows, identity, max_abs, CMat, C64};
use crate::tol::{TOL_CHAR, TOL_REP};

/// A homomorphism from a finite group into `GL(r, ℂ)`, stored element by element
/// in the group's element order.
#[derive(Debug, Clone)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    label: String,
    dim: usize,
    matrices: Vec<CMat>,
}

impl Representation {
    /// Validates shapes, `ρ(e) = I` and `ρ(gh) = ρ(g)ρ(h)` to [`TOL_REP`].
    pub fn new(group: Arc<FiniteGroup>, label: impl Into<String>, matrices: Vec<CMat>) -> Result<Self> {
        let label = label.into();
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{label}: {} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 || matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidRepresentation(format!(
                "{label}: matrices must be square of one size"
            )));
        }
        let rep = Self {
            group,
            label,
            dim,
            matrices,
        };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// Permutation matrices with a 1 at `(p(j), j)`, one per group element.
    pub fn from_permutations(group: Arc<FiniteGroup>, label: impl Into<String>, perms: &[Permutation]) -> Result<Self> {
        let matrices = perms.iter().map(permutation_matrix).collect();
        Self::new(group, label, matrices)
    }

    /// The defining representation of a permutation group on its own points.
    pub fn permutation(group: Arc<FiniteGroup>) -> Self {
        let perms = group.elements().to_vec();
        Self::from_permutations(group, "defining", &perms).expect("permutation matrices form a representation")
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let matrices = vec![identity(1); group.order()];
        Self {
            group,
            label: "trivial".into(),
            dim: 1,
            matrices,
        }
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        if max_abs(&(&self.matrices[g.identity()] - identity(self.dim))) > TOL_REP {
            return Err(Error::InvalidRepresentation(format!(
                "{}: identity is not mapped to I",
                self.label
            )));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = &self.matrices[g.mul(a, b)];
                let rhs = &self.matrices[a] * &self.matrices[b];
                if max_abs(&(lhs - rhs)) > TOL_REP {
                    return Err(Error::InvalidRepresentation(format!(
                        "{}: rho({}) rho({}) != rho({})",
                        self.label,
                        g.element(a),
                        g.element(b),
                        g.element(g.mul(a, b))
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn matrix(&self, element: usize) -> &CMat {
        &self.matrices[element]
    }

    pub fn character(&self) -> Character {
        Character {
            group: self.group.clone(),
            values: self.matrices.iter().map(|m| m.trace()).collect(),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let chi = self.character();
        (chi.inner(&chi) - 1.0).norm() < TOL_CHAR
    }

    /// How many times the irreducible `irrep` occurs in `self`.
    pub fn multiplicity_of(&self, irrep: &Representation) -> Result<usize> {
        if !Arc::ptr_eq(&self.group, &irrep.group) && *self.group != *irrep.group {
            return Err(Error::DimensionMismatch("representations over different groups".into()));
        }
        if !irrep.is_irreducible() {
            let chi = irrep.character();
            return Err(Error::ReducibleInput {
                label: irrep.label.clone(),
                norm: chi.inner(&chi).re,
            });
        }
        let value = self.character().inner(&irrep.character());
        let nearest = value.re.round();
        if (value - nearest).norm() > TOL_CHAR || nearest < 0.0 {
            return Err(Error::NotNearInteger { value: value.re });
        }
        Ok(nearest as usize)
    }
}

pub fn permutation_matrix(p: &Permutation) -> CMat {
    let n = p.degree();
    let mut m = CMat::zeros(n, n);
    for j in 0..n {
        m[(p.apply(j), j)] = c(1.0, 0.0);
    }
    m
}

/// Class function `g ↦ Tr ρ(g)`.
#[derive(Debug, Clone)]
pub struct Character {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

impl Character {
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `(1/|G|) Σ_g conj(χ₁(g)) χ₂(g)`.
    pub fn inner(&self, other: &Character) -> C64 {
        assert_eq!(
            self.values.len(),
            other.values.len(),
            "characters over different groups"
        );
        let sum: C64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        sum / self.values.len() as f64
    }

    /// Largest spread of character values within a conjugacy class.
    pub fn class_spread(&self) -> f64 {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|class| {
                let first = self.values[class[0]];
                class
                    .iter()
                    .map(|&i| (self.values[i] - first).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

/// Free-function form of [`Character::inner`].
pub fn char_inner(chi1: &Character, chi2: &Character) -> C64 {
    chi1.inner(chi2)
}

/// Groups whose irreducible representations ship with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinGroup {
    S3,
    Cyclic(usize),
}

impl BuiltinGroup {
    /// Accepts `S3`, `C3`, `Cn:5` style names.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("s3") {
            return Ok(Self::S3);
        }
        let n = t
            .strip_prefix("Cn:")
            .or_else(|| t.strip_prefix('C'))
            .and_then(|rest| rest.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::UnsupportedGroup(s.to_string()))?;
        Ok(Self::Cyclic(n))
    }

    pub fn degree(&self) -> usize {
        match *self {
            Self::S3 => 3,
            Self::Cyclic(n) => n,
        }
    }

    /// S3 elements in the order `[123] [213] [321] [132] [231] [312]`; `Cn` as `a^0 … a^(n-1)`
    /// with `a: i ↦ i+1 mod n`.
    pub fn group(&self) -> Arc<FiniteGroup> {
        match *self {
            Self::S3 => {
                let order = s3_table_order();
                let g = FiniteGroup::from_generators(3, &order[1..3]).expect("S3");
                Arc::new(g.reordered(&order).expect("S3 order"))
            }
            Self::Cyclic(n) => {
                let a = Permutation::cycle(n);
                let mut elems = vec![Permutation::identity(n)];
                for j in 1..n {
                    let next = a.compose(&elems[j - 1]);
                    elems.push(next);
                }
                let g = FiniteGroup::from_generators(n, &[a]).expect("cyclic group");
                Arc::new(g.reordered(&elems).expect("cyclic order"))
            }
        }
    }

    /// Whether `group` has exactly this builtin's permutations (in any order).
    pub fn matches(&self, group: &FiniteGroup) -> bool {
        let builtin = self.group();
        group.degree() == builtin.degree()
            && group.order() == builtin.order()
            && group.elements().iter().all(|p| builtin.index_of(p).is_some())
    }

    /// The complete list of irreducible representations, realized on `group`'s element order.
    pub fn irreps_on(&self, group: &Arc<FiniteGroup>) -> Result<Vec<Representation>> {
        if !self.matches(group) {
            return Err(Error::UnsupportedGroup(format!(
                "group of order {} on {} points is not {self}",
                group.order(),
                group.degree()
            )));
        }
        let per_element = |f: &dyn Fn(&Permutation) -> CMat| -> Vec<CMat> { group.elements().iter().map(f).collect() };
        match *self {
            Self::S3 => {
                let trivial = per_element(&|_| identity(1));
                let signum = per_element(&|p| CMat::from_element(1, 1, c(p.sign() as f64, 0.0)));
                let orth = per_element(&s3_orthogonal_matrix);
                Ok(vec![
                    Representation::new(group.clone(), "trivial", trivial)?,
                    Representation::new(group.clone(), "signum", signum)?,
                    Representation::new(group.clone(), "orthogonal", orth)?,
                ])
            }
            Self::Cyclic(n) => (0..n)
                .map(|m| {
                    let mats = per_element(&|p| {
                        // p = a^j with j = p(0)
                        let j = p.apply(0);
                        let phase = 2.0 * std::f64::consts::PI * (m * j % n) as f64 / n as f64;
                        CMat::from_element(1, 1, C64::from_polar(1.0, phase))
                    });
                    Representation::new(group.clone(), format!("rho{}", m + 1), mats)
                })
                .collect(),
        }
    }

    pub fn irreps(&self) -> (Arc<FiniteGroup>, Vec<Representation>) {
        let g = self.group();
        let irreps = self.irreps_on(&g).expect("builtin irreps on builtin group");
        (g, irreps)
    }
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::S3 => write!(f, "S3"),
            Self::Cyclic(n) => write!(f, "C{n}"),
        }
    }
}

pub fn s3_table_order() -> Vec<Permutation> {
    ["123", "213", "321", "132", "231", "312"]
        .iter()
        .map(|s| Permutation::from_one_line(s).expect("valid literal"))
        .collect()
}

/// The defining representation restricted to `span{e₂−e₁, e₃−e₁}`, written in that basis.
fn s3_orthogonal_matrix(p: &Permutation) -> CMat {
    let table: [(&str, [f64; 4]); 6] = [
        ("123", [1.0, 0.0, 0.0, 1.0]),
        ("213", [-1.0, -1.0, 0.0, 1.0]),
        ("321", [1.0, 0.0, -1.0, -1.0]),
        ("132", [0.0, 1.0, 1.0, 0.0]),
        ("231", [-1.0, -1.0, 1.0, 0.0]),
        ("312", [0.0, 1.0, -1.0, -1.0]),
    ];
    let key = p
        .images()
        .iter()
        .map(|i| char::from(b'1' + *i as u8))
        .collect::<String>();
    let (_, data) = table.iter().find(|(k, _)| *k == key).expect("S3 element");
    from_real_rows(2, 2, data)
}

/// Checks `Σ r(ρ)² = |G|` for a list of irreps.
pub fn dimension_sum_squares(irreps: &[Representation]) -> usize {
    irreps.iter().map(|r| r.dim() * r.dim()).sum()
}
