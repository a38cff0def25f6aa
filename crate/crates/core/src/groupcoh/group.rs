//! Finite groups as multiplication tables.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or indexes out of range")]
    MalformedTable,
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A finite group given by its multiplication table.
///
/// `mul[g][h]` is the product `g·h`; for permutation-derived groups the
/// convention is `g·h = g ∘ h` (apply `h` first).
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    /// Validates the table: closure, associativity, identity, inverses.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0
            || mul
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(GroupError::MalformedTable);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or(GroupError::NoInverse(g))?;
        }
        Ok(FiniteGroup { mul, identity, inv })
    }

    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let mul = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        Self::from_table(mul).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` is encoded as `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let enc = |x: usize, y: usize| x * nb + y;
        let mut mul = vec![vec![0; n]; n];
        for xa in 0..na {
            for xb in 0..nb {
                for ya in 0..na {
                    for yb in 0..nb {
                        mul[enc(xa, xb)][enc(ya, yb)] = enc(a.mul(xa, ya), b.mul(xb, yb));
                    }
                }
            }
        }
        Self::from_table(mul).expect("product table is a group")
    }

    /// The quaternion group {±1, ±i, ±j, ±k}, encoded as
    /// `unit + 4·sign` with units `1, i, j, k` and sign bit for negation.
    pub fn quaternion() -> Self {
        // multiplication of units with sign: i*j = k, j*k = i, k*i = j
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) => (x, false),
                (x, 0) => (x, false),
                (1, 1) | (2, 2) | (3, 3) => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut mul = vec![vec![0; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (u, flip) = unit_mul(a % 4, b % 4);
                let sign = (a / 4 + b / 4 + flip as usize) % 2;
                mul[a][b] = u + 4 * sign;
            }
        }
        Self::from_table(mul).expect("quaternion table is a group")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.mul
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }
}

/// Deterministic closure of a generating set of permutations of
/// `0..n`: returns the sorted element list (lex order on the image
/// vectors) and the index of the identity.
pub fn permutation_closure(n: usize, generators: &[Vec<usize>]) -> (Vec<Vec<usize>>, usize) {
    use std::collections::BTreeSet;
    let id: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id.clone()];
    while let Some(p) = frontier.pop() {
        for g in generators {
            // g ∘ p
            let q: Vec<usize> = (0..n).map(|x| g[p[x]]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let elements: Vec<Vec<usize>> = seen.into_iter().collect();
    let identity = elements.binary_search(&id).expect("identity in closure");
    (elements, identity)
}

/// Builds the group of a closed permutation set (table by composition).
pub fn group_from_permutations(perms: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let n = perms.len();
    let lookup: std::collections::BTreeMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut mul = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let comp: Vec<usize> = perms[b].iter().map(|&x| perms[a][x]).collect();
            mul[a][b] = *lookup
                .get(comp.as_slice())
                .ok_or(GroupError::MalformedTable)?;
        }
    }
    FiniteGroup::from_table(mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let g = FiniteGroup::cyclic(5);
        assert_eq!(g.order(), 5);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.element_order(1), 5);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 5);
    }

    #[test]
    fn quaternion_group() {
        let q = FiniteGroup::quaternion();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        // -1 is central of order 2; i, j, k have order 4
        assert_eq!(q.element_order(4), 2);
        for u in [1, 2, 3, 5, 6, 7] {
            assert_eq!(q.element_order(u), 4);
        }
        // i·j = k
        assert_eq!(q.mul(1, 2), 3);
        // j·i = -k
        assert_eq!(q.mul(2, 1), 7);
    }

    #[test]
    fn klein_four() {
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
    }

    #[test]
    fn closure_of_cycle() {
        let (elems, id) = permutation_closure(5, &[vec![1, 2, 3, 4, 0]]);
        assert_eq!(elems.len(), 5);
        let g = group_from_permutations(&elems).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.identity(), id);
    }

    #[test]
    fn bad_table_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
