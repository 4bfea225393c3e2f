//! Permutations and finite permutation groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::tol::DEFAULT_GROUP_CAP;

/// A bijection of `{0, …, n-1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Parses the one-line `[ijk]` notation with 1-based images, e.g. `"213"`.
    pub fn from_one_line(s: &str) -> Result<Self> {
        let images = s
            .chars()
            .filter(|c| !matches!(c, '[' | ']' | ' '))
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as usize - 1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("bad digit in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    /// Cyclic shift `i -> i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let mut visited = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.images[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Extends the permutation to `n` points, fixing the new ones.
    pub fn extended(&self, n: usize) -> Self {
        assert!(n >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree()..n);
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() < 10 {
            write!(f, "[")?;
            for &i in &self.images {
                write!(f, "{}", i + 1)?;
            }
            write!(f, "]")
        } else {
            write!(f, "{:?}", self.images)
        }
    }
}

/// A finite group of permutations with its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    cayley: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    identity: usize,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    /// Smallest group containing `generators`, acting on `degree` points.
    pub fn from_generators(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::from_generators_capped(degree, generators, DEFAULT_GROUP_CAP)
    }

    pub fn from_generators_capped(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation(
                "groups must act on at least one point".into(),
            ));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} acts on {} points, expected {degree}",
                g.degree()
            )));
        }

        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let push = |p: Permutation,
                    elements: &mut Vec<Permutation>,
                    index: &mut HashMap<Permutation, usize>|
         -> Result<bool> {
            if index.contains_key(&p) {
                return Ok(false);
            }
            if elements.len() >= cap {
                return Err(Error::ClosureOverflow { cap });
            }
            index.insert(p.clone(), elements.len());
            elements.push(p);
            Ok(true)
        };
        for g in generators {
            push(g.clone(), &mut elements, &mut index)?;
        }

        // right multiplication by generators reaches every element of a finite group
        let mut queue: VecDeque<usize> = (0..elements.len()).collect();
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let p = elements[x].compose(g);
                if push(p, &mut elements, &mut index)? {
                    queue.push_back(elements.len() - 1);
                }
            }
        }

        Ok(Self::from_closed_elements(degree, elements, index))
    }

    fn from_closed_elements(degree: usize, elements: Vec<Permutation>, index: HashMap<Permutation, usize>) -> Self {
        let n = elements.len();
        let cayley: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let identity = index[&Permutation::identity(degree)];
        let inverses = (0..n)
            .map(|i| cayley[i].iter().position(|&k| k == identity).expect("closed group"))
            .collect();
        Self {
            degree,
            elements,
            cayley,
            inverses,
            identity,
            index,
        }
    }

    /// The same group with its elements listed in `order`.
    pub fn reordered(&self, order: &[Permutation]) -> Result<Self> {
        if order.len() != self.order() {
            return Err(Error::InvalidPermutation(format!(
                "reorder list has {} elements, group has {}",
                order.len(),
                self.order()
            )));
        }
        let mut index = HashMap::new();
        for (i, p) in order.iter().enumerate() {
            if !self.index.contains_key(p) || index.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidPermutation(format!(
                    "{p} is not a distinct group element"
                )));
            }
        }
        Ok(Self::from_closed_elements(self.degree, order.to_vec(), index))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive check of the group axioms on the Cayley table.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        let e = self.identity;
        let identity_ok = (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a);
        let inverse_ok = (0..n).all(|a| self.mul(a, self.inverse(a)) == e && self.mul(self.inverse(a), a) == e);
        let assoc_ok =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))));
        identity_ok && inverse_ok && assoc_ok
    }

    /// Partition into classes `{g⁻¹ a g : g ∈ G}`, ordered by first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..n {
                let b = self.mul(self.mul(self.inverse(g), a), g);
                if class_of[b] == usize::MAX {
                    class_of[b] = id;
                    class.push(b);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}
