//! Finite ordered simplicial complexes, simplicial maps and finite group
//! actions, cochain complexes over ℤ / ℚ / ℚ/ℤ, barycentric subdivision,
//! free quotients, Bockstein, and the fixture library.

mod action;
mod cochain;
pub mod fixtures;
mod quotient;
mod subdivision;

pub use action::FiniteGroupAction;
pub use cochain::{Cochain, CohomologyGroup, Ring};
pub use quotient::{quotient_by_free_action, QuotientError};
pub use subdivision::{barycentric_subdivide, Subdivision};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::matrix::{snf, SnfDecomposition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet contains a repeated or out-of-range vertex")]
    MalformedFacet,
    #[error("vertex {0} does not appear in any facet")]
    UnusedVertex(usize),
    #[error("complex is not connected")]
    NotConnected,
    #[error("not a simplicial automorphism: image of a simplex is not a simplex")]
    NotSimplicial,
    #[error("vertex map is not a permutation")]
    NotAPermutation,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain degree {0} does not match the expected degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("Bockstein lift has a non-integral coboundary (input was not a cocycle mod 1)")]
    NotIntegral,
}

/// A finite ordered simplicial complex. Simplices are stored per
/// dimension as lexicographically sorted vertex lists, so indices are
/// deterministic across runs.
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    snf_cache: Arc<Mutex<HashMap<usize, Arc<SnfDecomposition>>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            n_vertices: self.n_vertices,
            simplices: self.simplices.clone(),
            index: self.index.clone(),
            snf_cache: Arc::clone(&self.snf_cache),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.simplices == other.simplices
    }
}
impl Eq for SimplicialComplex {}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(f = {:?})", self.f_vector())
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets` (closed under faces) and
    /// validates it: distinct vertices per facet, every vertex used,
    /// connected.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        let complex = Self::from_facets_allow_disconnected(n_vertices, facets)?;
        if !complex.is_connected() {
            return Err(ComplexError::NotConnected);
        }
        Ok(complex)
    }

    /// Same without the connectivity requirement (bundle total spaces
    /// with partial holonomy are disjoint unions of covers).
    pub fn from_facets_allow_disconnected(
        n_vertices: usize,
        facets: &[Vec<usize>],
    ) -> Result<Self, ComplexError> {
        use std::collections::BTreeSet;
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != facet.len() || sorted.iter().any(|&v| v >= n_vertices) {
                return Err(ComplexError::MalformedFacet);
            }
            // all nonempty subsets
            let k = sorted.len();
            for mask in 1u64..(1 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sorted[i])
                    .collect();
                let q = face.len() - 1;
                if by_dim.len() <= q {
                    by_dim.resize_with(q + 1, BTreeSet::new);
                }
                by_dim[q].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        if simplices.is_empty() || simplices[0].len() != n_vertices {
            let seen: std::collections::BTreeSet<usize> = simplices
                .first()
                .map(|vs| vs.iter().map(|s| s[0]).collect())
                .unwrap_or_default();
            let missing = (0..n_vertices).find(|v| !seen.contains(v)).unwrap_or(0);
            return Err(ComplexError::UnusedVertex(missing));
        }
        let index = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex {
            n_vertices,
            simplices,
            index,
            snf_cache: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn num_simplices(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, |s| s.len())
    }

    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.simplices.get(q).map_or(&[], |s| s.as_slice())
    }

    pub fn simplex(&self, q: usize, i: usize) -> &[usize] {
        &self.simplices[q][i]
    }

    /// Index of a sorted vertex list among the q-simplices.
    pub fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        let q = sorted.len().checked_sub(1)?;
        self.index.get(q)?.get(sorted).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Connected-component label per vertex (labels are 0-based, ordered
    /// by least vertex).
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a] = b;
            }
        }
        let roots: Vec<usize> = (0..self.n_vertices).map(|v| find(&mut parent, v)).collect();
        let mut labels: Vec<usize> = roots.clone();
        labels.sort_unstable();
        labels.dedup();
        roots
            .iter()
            .map(|r| labels.binary_search(r).unwrap())
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for q in 0..=self.dimension() {
            for s in self.simplices(q) {
                let covered = self.simplices(q + 1).iter().any(|t| is_subset(s, t));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Cached SNF (with transforms) of the coboundary matrix
    /// `d : C^q → C^{q+1}`.
    pub fn snf_for_degree(&self, q: usize) -> Arc<SnfDecomposition> {
        let mut cache = self.snf_cache.lock().unwrap();
        if let Some(s) = cache.get(&q) {
            return Arc::clone(s);
        }
        let m = self.coboundary_matrix(q);
        let s = Arc::new(snf(&m));
        cache.insert(q, Arc::clone(&s));
        Arc::clone(&s)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

/// A simplicial map between complexes, given on vertices. Simplices may
/// degenerate (collapse); pullback sends collapsed simplices to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        domain: &SimplicialComplex,
        codomain: &SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self, ComplexError> {
        if vertex_map.len() != domain.n_vertices()
            || vertex_map.iter().any(|&v| v >= codomain.n_vertices())
        {
            return Err(ComplexError::NotSimplicial);
        }
        for q in 0..=domain.dimension() {
            for s in domain.simplices(q) {
                let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
                image.sort_unstable();
                image.dedup();
                if codomain.index_of(&image).is_none() {
                    return Err(ComplexError::NotSimplicial);
                }
            }
        }
        Ok(SimplicialMap { vertex_map })
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[v]
    }
}

/// A simplicial automorphism: a vertex permutation mapping simplices to
/// simplices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialAutomorphism {
    pub perm: Vec<usize>,
}

impl std::fmt::Debug for SimplicialAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Aut{:?}", self.perm)
    }
}

impl SimplicialAutomorphism {
    pub fn identity(complex: &SimplicialComplex) -> Self {
        SimplicialAutomorphism {
            perm: (0..complex.n_vertices()).collect(),
        }
    }

    pub fn new(complex: &SimplicialComplex, perm: Vec<usize>) -> Result<Self, ComplexError> {
        if perm.len() != complex.n_vertices() {
            return Err(ComplexError::NotAPermutation);
        }
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            if v >= perm.len() || seen[v] {
                return Err(ComplexError::NotAPermutation);
            }
            seen[v] = true;
        }
        let auto = SimplicialAutomorphism { perm };
        // image of every simplex must be a simplex
        for q in 0..=complex.dimension() {
            for s in complex.simplices(q) {
                if complex.index_of(&auto.image_sorted(s)).is_none() {
                    return Err(ComplexError::NotSimplicial);
                }
            }
        }
        Ok(auto)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn image_sorted(&self, simplex: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = simplex.iter().map(|&v| self.perm[v]).collect();
        img.sort_unstable();
        img
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SimplicialAutomorphism) -> SimplicialAutomorphism {
        SimplicialAutomorphism {
            perm: other.perm.iter().map(|&v| self.perm[v]).collect(),
        }
    }

    pub fn inverse(&self) -> SimplicialAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v] = i;
        }
        SimplicialAutomorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }
}
