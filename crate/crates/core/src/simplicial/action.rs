//! Finite groups acting by simplicial automorphisms.

use super::{ComplexError, SimplicialAutomorphism, SimplicialComplex};
use crate::groupcoh::{group_from_permutations, permutation_closure, FiniteGroup};

/// A finite group together with its action on a complex; the action is a
/// homomorphism into the simplicial automorphisms (table-checked).
#[derive(Clone, Debug)]
pub struct FiniteGroupAction {
    pub group: FiniteGroup,
    pub autos: Vec<SimplicialAutomorphism>,
}

impl FiniteGroupAction {
    /// Trivial action of the trivial group.
    pub fn trivial(complex: &SimplicialComplex) -> Self {
        FiniteGroupAction {
            group: FiniteGroup::cyclic(1),
            autos: vec![SimplicialAutomorphism::identity(complex)],
        }
    }

    /// Generates the group from simplicial generator permutations; the
    /// element order is deterministic (lexicographic on image vectors).
    pub fn from_generators(
        complex: &SimplicialComplex,
        generators: &[Vec<usize>],
    ) -> Result<Self, ComplexError> {
        for g in generators {
            SimplicialAutomorphism::new(complex, g.clone())?;
        }
        let (perms, _) = permutation_closure(complex.n_vertices(), generators);
        let group = group_from_permutations(&perms).map_err(|_| ComplexError::NotSimplicial)?;
        let autos = perms
            .into_iter()
            .map(|perm| SimplicialAutomorphism { perm })
            .collect();
        Ok(FiniteGroupAction { group, autos })
    }

    /// Wraps a closed list of automorphisms; `table[g][h]` must match
    /// `autos[g] ∘ autos[h]`.
    pub fn from_parts(group: FiniteGroup, autos: Vec<SimplicialAutomorphism>) -> Self {
        let a = FiniteGroupAction { group, autos };
        assert!(a.is_homomorphism(), "action is not a homomorphism");
        a
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn auto(&self, g: usize) -> &SimplicialAutomorphism {
        &self.autos[g]
    }

    pub fn is_homomorphism(&self) -> bool {
        let n = self.group.order();
        if self.autos.len() != n {
            return false;
        }
        if !self.autos[self.group.identity()].is_identity() {
            return false;
        }
        for g in 0..n {
            for h in 0..n {
                if self.autos[self.group.mul(g, h)] != self.autos[g].compose(&self.autos[h]) {
                    return false;
                }
            }
        }
        true
    }
}
