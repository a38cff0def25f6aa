//! Barycentric subdivision with the induced action and the last-vertex
//! transfer map (a simplicial map inducing isomorphisms on cohomology,
//! used to transport cochain classes between a complex and its
//! subdivision).

use super::{FiniteGroupAction, SimplicialAutomorphism, SimplicialComplex, SimplicialMap};

pub struct Subdivision {
    /// The subdivided complex; its vertices are the simplices of the
    /// original, ordered by (dimension, simplex index). In particular the
    /// first block of vertices is the original vertex set in order.
    pub complex: SimplicialComplex,
    /// For each new vertex, the (dimension, index) of the original simplex.
    pub vertex_simplex: Vec<(usize, usize)>,
    /// Last-vertex projection onto the original complex.
    pub transfer: SimplicialMap,
}

impl Subdivision {
    /// The subdivision vertex sitting at an original q-simplex.
    pub fn vertex_of(&self, original: &SimplicialComplex, simplex: &[usize]) -> usize {
        let q = simplex.len() - 1;
        let idx = original.index_of(simplex).expect("not a simplex");
        self.offset(original, q) + idx
    }

    fn offset(&self, original: &SimplicialComplex, q: usize) -> usize {
        (0..q).map(|d| original.num_simplices(d)).sum()
    }

    /// The automorphism of the subdivision induced by an automorphism of
    /// the original complex.
    pub fn induced_automorphism(
        &self,
        original: &SimplicialComplex,
        g: &SimplicialAutomorphism,
    ) -> SimplicialAutomorphism {
        let perm = self
            .vertex_simplex
            .iter()
            .map(|&(q, i)| {
                let image = g.image_sorted(original.simplex(q, i));
                let idx = original.index_of(&image).expect("automorphism image");
                self.offset(original, q) + idx
            })
            .collect();
        SimplicialAutomorphism { perm }
    }

    pub fn induced_action(
        &self,
        original: &SimplicialComplex,
        action: &FiniteGroupAction,
    ) -> FiniteGroupAction {
        let autos = action
            .autos
            .iter()
            .map(|g| self.induced_automorphism(original, g))
            .collect();
        FiniteGroupAction::from_parts(action.group.clone(), autos)
    }
}

/// Barycentric subdivision: new vertices are the simplices of `x`, new
/// simplices the strictly increasing chains under inclusion.
pub fn barycentric_subdivide(x: &SimplicialComplex) -> Subdivision {
    let mut vertex_simplex = Vec::new();
    for q in 0..=x.dimension() {
        for i in 0..x.num_simplices(q) {
            vertex_simplex.push((q, i));
        }
    }
    let offset: Vec<usize> = {
        let mut acc = 0;
        (0..=x.dimension())
            .map(|q| {
                let o = acc;
                acc += x.num_simplices(q);
                o
            })
            .collect()
    };
    let n_new = vertex_simplex.len();

    // facets: full flags inside each maximal simplex, one per vertex ordering
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for facet in x.facets() {
        let k = facet.len();
        let mut perm_state: Vec<usize> = (0..k).collect();
        permutations(&mut perm_state, 0, &mut |perm| {
            let mut chain = Vec::with_capacity(k);
            let mut prefix: Vec<usize> = Vec::with_capacity(k);
            for &p in perm {
                prefix.push(facet[p]);
                let mut sorted = prefix.clone();
                sorted.sort_unstable();
                let q = sorted.len() - 1;
                let idx = x.index_of(&sorted).expect("prefix of a facet");
                chain.push(offset[q] + idx);
            }
            facets.push(chain);
        });
    }

    let complex = SimplicialComplex::from_facets(n_new, &facets)
        .expect("subdivision of a valid complex is valid");
    let vertex_map: Vec<usize> = vertex_simplex
        .iter()
        .map(|&(q, i)| *x.simplex(q, i).last().unwrap())
        .collect();
    let transfer =
        SimplicialMap::new(&complex, x, vertex_map).expect("last-vertex map is simplicial");

    Subdivision {
        complex,
        vertex_simplex,
        transfer,
    }
}

#[cfg(test)]
pub(crate) fn test_permutations(state: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    permutations(state, k, f)
}

fn permutations(state: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == state.len() {
        f(state);
        return;
    }
    for i in k..state.len() {
        state.swap(k, i);
        permutations(state, k + 1, f);
        state.swap(k, i);
    }
}
