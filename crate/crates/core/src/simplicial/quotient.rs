//! Quotients of complexes by free regular simplicial actions.

use thiserror::Error;

use super::{ComplexError, FiniteGroupAction, SimplicialComplex, SimplicialMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    /// Some non-identity element fixes a simplex setwise.
    #[error("action is not free: element {element} fixes a {dim}-simplex")]
    NotFree { element: usize, dim: usize },
    /// The quotient would not be a simplicial complex with a simplicial
    /// covering projection; subdивide and retry.
    #[error("action is not regular at dimension {dim}; subdivide and retry")]
    NotRegular { dim: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Quotient of `x` by a free, regular action, together with the
/// simplicial projection. Quotient vertices are orbit classes, ordered by
/// their minimal representative.
pub fn quotient_by_free_action(
    x: &SimplicialComplex,
    action: &FiniteGroupAction,
) -> Result<(SimplicialComplex, SimplicialMap), QuotientError> {
    let order = action.order();
    let id = action.group.identity();

    // freeness on simplices
    for g in 0..order {
        if g == id {
            continue;
        }
        let auto = action.auto(g);
        for q in 0..=x.dimension() {
            for s in x.simplices(q) {
                if &auto.image_sorted(s) == s {
                    return Err(QuotientError::NotFree { element: g, dim: q });
                }
            }
        }
    }

    // vertex orbits, labeled by minimal representative
    let n = x.n_vertices();
    let mut orbit_min: Vec<usize> = (0..n).collect();
    for v in 0..n {
        let m = (0..order).map(|g| action.auto(g).apply(v)).min().unwrap();
        orbit_min[v] = m;
    }
    let mut reps: Vec<usize> = orbit_min.clone();
    reps.sort_unstable();
    reps.dedup();
    let orbit_id = |v: usize| reps.binary_search(&orbit_min[v]).unwrap();

    // regularity condition A: no simplex meets an orbit twice
    for q in 0..=x.dimension() {
        for s in x.simplices(q) {
            let mut ids: Vec<usize> = s.iter().map(|&v| orbit_id(v)).collect();
            ids.sort_unstable();
            let len = ids.len();
            ids.dedup();
            if ids.len() != len {
                return Err(QuotientError::NotRegular { dim: q });
            }
        }
    }

    // regularity condition B: each projected simplex has exactly one
    // orbit above it (fibers have the full group size)
    for q in 0..=x.dimension() {
        let mut counts: std::collections::HashMap<Vec<usize>, usize> =
            std::collections::HashMap::new();
        for s in x.simplices(q) {
            let mut img: Vec<usize> = s.iter().map(|&v| orbit_id(v)).collect();
            img.sort_unstable();
            *counts.entry(img).or_insert(0) += 1;
        }
        if counts.values().any(|&c| c != order) {
            return Err(QuotientError::NotRegular { dim: q });
        }
    }

    let facet_images: Vec<Vec<usize>> = x
        .facets()
        .iter()
        .map(|s| {
            let mut img: Vec<usize> = s.iter().map(|&v| orbit_id(v)).collect();
            img.sort_unstable();
            img
        })
        .collect();
    let quotient = SimplicialComplex::from_facets(reps.len(), &facet_images)?;
    let vertex_map: Vec<usize> = (0..n).map(orbit_id).collect();
    let projection = SimplicialMap::new(x, &quotient, vertex_map)?;
    Ok((quotient, projection))
}

/// Chosen orbit representatives (the minimal vertex of each orbit),
/// indexed by quotient vertex.
pub fn orbit_representatives(
    projection: &SimplicialMap,
    quotient: &SimplicialComplex,
) -> Vec<usize> {
    let mut reps = vec![usize::MAX; quotient.n_vertices()];
    for (v, &w) in projection.vertex_map.iter().enumerate() {
        if v < reps[w] {
            reps[w] = v;
        }
    }
    reps
}

/// Pushes an automorphism of the cover that normalizes the deck action
/// down to the quotient; panics if the map is not well defined.
pub fn descend_automorphism(
    cover_auto: &super::SimplicialAutomorphism,
    projection: &SimplicialMap,
    quotient: &SimplicialComplex,
) -> super::SimplicialAutomorphism {
    let mut image = vec![usize::MAX; quotient.n_vertices()];
    for (v, &w) in projection.vertex_map.iter().enumerate() {
        let target = projection.apply(cover_auto.apply(v));
        if image[w] == usize::MAX {
            image[w] = target;
        } else {
            assert_eq!(
                image[w], target,
                "automorphism does not descend to the quotient"
            );
        }
    }
    super::SimplicialAutomorphism { perm: image }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialComplex::from_facets(n, &facets).unwrap()
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let x = cycle(6);
        let a = FiniteGroupAction::trivial(&x);
        let (q, _) = quotient_by_free_action(&x, &a).unwrap();
        assert_eq!(q, x);
    }

    #[test]
    fn hexagon_mod_antipodal_is_triangle() {
        let x = cycle(6);
        let a = FiniteGroupAction::from_generators(&x, &[vec![3, 4, 5, 0, 1, 2]]).unwrap();
        let (q, p) = quotient_by_free_action(&x, &a).unwrap();
        assert_eq!(q.f_vector(), vec![3, 3]);
        assert_eq!(orbit_representatives(&p, &q), vec![0, 1, 2]);
    }

    #[test]
    fn square_mod_antipodal_not_regular() {
        let x = cycle(4);
        let a = FiniteGroupAction::from_generators(&x, &[vec![2, 3, 0, 1]]).unwrap();
        match quotient_by_free_action(&x, &a) {
            Err(QuotientError::NotRegular { .. }) => {}
            other => panic!("expected NotRegular, got {other:?}"),
        }
    }

    #[test]
    fn hexagon_mod_rotation_not_regular() {
        // Z/3 rotation of the hexagon: the quotient "digon" is not simplicial
        let x = cycle(6);
        let a = FiniteGroupAction::from_generators(&x, &[vec![2, 3, 4, 5, 0, 1]]).unwrap();
        match quotient_by_free_action(&x, &a) {
            Err(QuotientError::NotRegular { .. }) => {}
            other => panic!("expected NotRegular, got {other:?}"),
        }
    }

    #[test]
    fn non_free_action_detected() {
        let x = cycle(6);
        // reflection fixing vertices 0 and 3
        let a = FiniteGroupAction::from_generators(&x, &[vec![0, 5, 4, 3, 2, 1]]).unwrap();
        match quotient_by_free_action(&x, &a) {
            Err(QuotientError::NotFree { .. }) => {}
            other => panic!("expected NotFree, got {other:?}"),
        }
    }
}
