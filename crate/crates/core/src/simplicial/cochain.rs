//! Simplicial cochains with exact coefficients, the coboundary operator,
//! pullbacks, cohomology via Smith normal form, and the Bockstein map.

use num_traits::One;

use super::{CochainError, SimplicialAutomorphism, SimplicialComplex, SimplicialMap};
use crate::exact::{CircleValue, Coeff, CoeffOps, Int, Rat};
use crate::matrix::{snf_diagonal, IntMatrix};

/// Coefficient ring selector for cohomology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Z,
    Q,
}

/// A simplicial q-cochain: one value per canonically ordered q-simplex.
/// Values alternate under vertex-order transpositions; evaluation on an
/// arbitrary ordering applies the sign of the sorting permutation.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain<R> {
    pub degree: usize,
    pub values: Vec<R>,
}

impl<R: std::fmt::Debug> std::fmt::Debug for Cochain<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cochain(q={}, {:?})", self.degree, self.values)
    }
}

/// Sorts `v` in place, returning the sign of the permutation used, or
/// `None` if there are repeated entries.
pub fn sort_with_sign(v: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

impl<R: Coeff> Cochain<R>
where
    for<'a> &'a R: CoeffOps<R>,
{
    pub fn zero(complex: &SimplicialComplex, degree: usize) -> Self {
        Cochain {
            degree,
            values: vec![R::zero(); complex.num_simplices(degree)],
        }
    }

    pub fn from_values(complex: &SimplicialComplex, degree: usize, values: Vec<R>) -> Self {
        assert_eq!(
            values.len(),
            complex.num_simplices(degree),
            "value count mismatch"
        );
        Cochain { degree, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|a| -a).collect(),
        }
    }

    /// Value on an arbitrarily ordered simplex, with the alternating sign;
    /// zero on degenerate tuples.
    pub fn eval(&self, complex: &SimplicialComplex, vertices: &[usize]) -> R {
        assert_eq!(vertices.len(), self.degree + 1);
        let mut sorted = vertices.to_vec();
        let Some(sign) = sort_with_sign(&mut sorted) else {
            return R::zero();
        };
        let idx = complex
            .index_of(&sorted)
            .unwrap_or_else(|| panic!("{sorted:?} is not a simplex"));
        let v = &self.values[idx];
        if sign >= 0 {
            v.clone()
        } else {
            -v
        }
    }
}

impl SimplicialComplex {
    /// Alternating-sum simplicial coboundary `d : C^q → C^{q+1}`.
    pub fn coboundary<R: Coeff>(&self, c: &Cochain<R>) -> Cochain<R>
    where
        for<'a> &'a R: CoeffOps<R>,
    {
        let q = c.degree;
        let out = self
            .simplices(q + 1)
            .iter()
            .map(|tau| {
                let mut acc = R::zero();
                let mut face = Vec::with_capacity(q + 1);
                for i in 0..=q + 1 {
                    face.clear();
                    face.extend(
                        tau.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i)
                            .map(|(_, &v)| v),
                    );
                    let idx = self
                        .index_of(&face)
                        .expect("face of a simplex is a simplex");
                    let v = &c.values[idx];
                    acc = if i % 2 == 0 { &acc + v } else { &acc - v };
                }
                acc
            })
            .collect();
        Cochain {
            degree: q + 1,
            values: out,
        }
    }

    pub fn is_cocycle<R: Coeff>(&self, c: &Cochain<R>) -> bool
    where
        for<'a> &'a R: CoeffOps<R>,
    {
        self.coboundary(c).is_zero()
    }

    /// Matrix of `d : C^q → C^{q+1}` (rows indexed by (q+1)-simplices).
    pub fn coboundary_matrix(&self, q: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.num_simplices(q + 1), self.num_simplices(q));
        for (row, tau) in self.simplices(q + 1).iter().enumerate() {
            let mut face = Vec::with_capacity(q + 1);
            for i in 0..=q + 1 {
                face.clear();
                face.extend(
                    tau.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != i)
                        .map(|(_, &v)| v),
                );
                let col = self
                    .index_of(&face)
                    .expect("face of a simplex is a simplex");
                let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                m.add_to(row, col, &sign);
            }
        }
        m
    }

    /// Pullback `g*c` along an automorphism: `(g*c)(σ) = ±c(g(σ))`.
    pub fn pullback<R: Coeff>(&self, g: &SimplicialAutomorphism, c: &Cochain<R>) -> Cochain<R>
    where
        for<'a> &'a R: CoeffOps<R>,
    {
        let q = c.degree;
        let values = self
            .simplices(q)
            .iter()
            .map(|s| {
                let image: Vec<usize> = s.iter().map(|&v| g.apply(v)).collect();
                c.eval(self, &image)
            })
            .collect();
        Cochain { degree: q, values }
    }

    /// Pullback along a simplicial map `f : X → Y` of a cochain on `Y`;
    /// collapsed simplices pull back to zero.
    pub fn pullback_along<R: Coeff>(
        &self,
        f: &SimplicialMap,
        codomain: &SimplicialComplex,
        c: &Cochain<R>,
    ) -> Cochain<R>
    where
        for<'a> &'a R: CoeffOps<R>,
    {
        let q = c.degree;
        let values = self
            .simplices(q)
            .iter()
            .map(|s| {
                let image: Vec<usize> = s.iter().map(|&v| f.apply(v)).collect();
                let mut sorted = image.clone();
                match sort_with_sign(&mut sorted) {
                    None => R::zero(),
                    Some(_) => c.eval(codomain, &image),
                }
            })
            .collect();
        Cochain { degree: q, values }
    }

    /// `(betti rank, torsion divisors)` of `H^q` with ℤ or ℚ coefficients,
    /// computed from Smith normal forms of the coboundary matrices.
    pub fn cohomology(&self, q: usize, ring: Ring) -> CohomologyGroup {
        let rank_dq = if q + 1 > self.dimension() {
            0
        } else {
            self.rank_of_coboundary(q)
        };
        let (rank_dqm1, torsion) = if q == 0 {
            (0, vec![])
        } else {
            let snf = self.snf_for_degree(q - 1);
            (snf.rank(), snf.torsion())
        };
        let betti = self.num_simplices(q) - rank_dq - rank_dqm1;
        CohomologyGroup {
            rank: betti,
            torsion: match ring {
                Ring::Z => torsion,
                Ring::Q => vec![],
            },
        }
    }

    fn rank_of_coboundary(&self, q: usize) -> usize {
        // reuse a cached transform-SNF when present, else a cheap diagonal run
        {
            let cache = self.snf_cache.lock().unwrap();
            if let Some(s) = cache.get(&q) {
                return s.rank();
            }
        }
        snf_diagonal(&self.coboundary_matrix(q)).rank()
    }

    /// Returns `b` with `db = z` in the ring of `z`, or `None` when `z` is
    /// not a coboundary; `Err` when `z` is not even a cocycle.
    pub fn is_coboundary<R: Coeff>(
        &self,
        z: &Cochain<R>,
    ) -> Result<Option<Cochain<R>>, CochainError>
    where
        for<'a> &'a R: CoeffOps<R>,
    {
        if !self.is_cocycle(z) {
            return Err(CochainError::NotACocycle);
        }
        let q = z.degree;
        assert!(q >= 1, "degree-0 cochains have no primitives");
        let snf = self.snf_for_degree(q - 1);
        Ok(R::solve_primitive(&snf, &z.values).map(|values| Cochain {
            degree: q - 1,
            values,
        }))
    }

    /// Like [`SimplicialComplex::is_coboundary`] for ℚ/ℤ cochains, but
    /// with the primitive constrained to the subgroup `⟨1/m⟩ ⊆ ℚ/ℤ`
    /// (fiber-valued primitives for bundle data).
    pub fn is_coboundary_in_subgroup(
        &self,
        z: &Cochain<CircleValue>,
        m: usize,
    ) -> Result<Option<Cochain<CircleValue>>, CochainError> {
        if !self.is_cocycle(z) {
            return Err(CochainError::NotACocycle);
        }
        let q = z.degree;
        assert!(q >= 1, "degree-0 cochains have no primitives");
        let m_int = Int::from(m as i64);
        let m_rat = Rat::from(m_int.clone());
        let rhs: Vec<Int> = z
            .values
            .iter()
            .map(|v| {
                let scaled = v.lift() * &m_rat;
                if scaled.denom().is_one() {
                    Ok(scaled.numer().clone())
                } else {
                    Err(CochainError::NotIntegral)
                }
            })
            .collect::<Result<_, _>>()?;
        let snf = self.snf_for_degree(q - 1);
        Ok(snf.solve_mod(&rhs, &m_int).map(|y| Cochain {
            degree: q - 1,
            values: y
                .into_iter()
                .map(|k| CircleValue::new(Rat::new(k, m_int.clone())))
                .collect(),
        }))
    }

    /// Bockstein of a ℚ/ℤ-valued cocycle with respect to
    /// `0 → ℤ → ℚ → ℚ/ℤ → 0`: lift values canonically to `[0,1) ⊂ ℚ` and
    /// take the coboundary, which is integral.
    pub fn bockstein(&self, alpha: &Cochain<CircleValue>) -> Result<Cochain<Int>, CochainError> {
        if !self.is_cocycle(alpha) {
            return Err(CochainError::NotACocycle);
        }
        let lifted = lift_circle(alpha);
        let d = self.coboundary(&lifted);
        let values = d
            .values
            .into_iter()
            .map(|v| {
                if v.denom().is_one() {
                    Ok(v.numer().clone())
                } else {
                    Err(CochainError::NotIntegral)
                }
            })
            .collect::<Result<Vec<Int>, _>>()?;
        Ok(Cochain {
            degree: d.degree,
            values,
        })
    }
}

/// Canonical lift of a ℚ/ℤ-cochain to a ℚ-cochain with values in `[0,1)`.
pub fn lift_circle(c: &Cochain<CircleValue>) -> Cochain<Rat> {
    Cochain {
        degree: c.degree,
        values: c.values.iter().map(|v| v.lift()).collect(),
    }
}

/// A finitely generated abelian group `ℤ^rank ⊕ ⊕ᵢ ℤ/tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl CohomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        CohomologyGroup {
            rank,
            torsion: vec![],
        }
    }

    pub fn cyclic(m: i64) -> Self {
        CohomologyGroup {
            rank: 0,
            torsion: vec![Int::from(m)],
        }
    }
}

impl std::fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rank)?;
        for t in &self.torsion {
            write!(f, " + ℤ/{}", t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn sphere2() -> SimplicialComplex {
        // boundary of the 3-simplex
        SimplicialComplex::from_facets(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn d_squared_zero_all_rings() {
        let x = sphere2();
        // an arbitrary integer 0-cochain and 1-cochain
        let c0 = Cochain::from_values(&x, 0, (0..4).map(|i| int(3 * i as i64 - 2)).collect());
        assert!(x.coboundary(&x.coboundary(&c0)).is_zero());
        let c1 = Cochain::from_values(
            &x,
            1,
            (0..6).map(|i| int(i as i64 * i as i64 - 4)).collect(),
        );
        assert!(x.coboundary(&x.coboundary(&c1)).is_zero());

        let q1 = Cochain::from_values(
            &x,
            1,
            (0..6)
                .map(|i| CircleValue::from_frac(i as i64, 7))
                .collect(),
        );
        assert!(x.coboundary(&x.coboundary(&q1)).is_zero());
    }

    #[test]
    fn coboundary_of_vertex_function() {
        let x = sphere2();
        let f = Cochain::from_values(&x, 0, vec![int(0), int(1), int(3), int(6)]);
        let df = x.coboundary(&f);
        // (df)(u,v) = f(v) − f(u) on the edge (0,1)
        let e01 = x.index_of(&[0, 1]).unwrap();
        assert_eq!(df.values[e01], int(1));
        let e13 = x.index_of(&[1, 3]).unwrap();
        assert_eq!(df.values[e13], int(5));
    }

    #[test]
    fn eval_alternates() {
        let x = sphere2();
        let c1 = Cochain::from_values(&x, 1, (0..6).map(|i| int(i as i64 + 1)).collect());
        let v = c1.eval(&x, &[2, 0]);
        let w = c1.eval(&x, &[0, 2]);
        assert_eq!(v, -&w);
        let c2 = Cochain::from_values(&x, 2, (0..4).map(|i| int(i as i64 + 1)).collect());
        assert_eq!(c2.eval(&x, &[1, 0, 2]), -&c2.eval(&x, &[0, 1, 2]));
        assert_eq!(c2.eval(&x, &[1, 2, 0]), c2.eval(&x, &[0, 1, 2]));
    }

    #[test]
    fn sphere_cohomology() {
        let x = sphere2();
        assert_eq!(x.cohomology(0, Ring::Z), CohomologyGroup::free(1));
        assert_eq!(x.cohomology(1, Ring::Z), CohomologyGroup::free(0));
        assert_eq!(x.cohomology(2, Ring::Z), CohomologyGroup::free(1));
    }

    #[test]
    fn pullback_functorial() {
        let x = sphere2();
        let g = SimplicialAutomorphism::new(&x, vec![1, 2, 3, 0]).unwrap();
        let h = SimplicialAutomorphism::new(&x, vec![0, 2, 1, 3]).unwrap();
        let c = Cochain::from_values(&x, 1, (0..6).map(|i| int(2 * i as i64 - 3)).collect());
        // (g∘h)* = h* ∘ g*
        let gh = g.compose(&h);
        let lhs = x.pullback(&gh, &c);
        let rhs = x.pullback(&h, &x.pullback(&g, &c));
        assert_eq!(lhs, rhs);
        // id* = id
        let id = SimplicialAutomorphism::identity(&x);
        assert_eq!(x.pullback(&id, &c), c);
    }

    #[test]
    fn coboundary_has_primitive() {
        let x = sphere2();
        let b = Cochain::from_values(&x, 0, vec![int(2), int(-1), int(0), int(5)]);
        let z = x.coboundary(&b);
        let p = x
            .is_coboundary(&z)
            .unwrap()
            .expect("constructed coboundary");
        assert_eq!(x.coboundary(&p), z);
    }

    #[test]
    fn non_cocycle_detected() {
        let x = sphere2();
        let mut c = Cochain::<Int>::zero(&x, 1);
        c.values[0] = int(1);
        assert_eq!(x.is_coboundary(&c).unwrap_err(), CochainError::NotACocycle);
    }

    #[test]
    fn bockstein_of_rational_lift_is_zero_class() {
        let x = sphere2();
        // a ℚ/ℤ 0-cochain's coboundary is a cocycle with zero Bockstein class
        let f = Cochain::from_values(
            &x,
            0,
            vec![
                CircleValue::from_frac(1, 3),
                CircleValue::from_frac(2, 3),
                CircleValue::zero(),
                CircleValue::from_frac(1, 2),
            ],
        );
        let alpha = x.coboundary(&f);
        let beta = x.bockstein(&alpha).unwrap();
        assert!(x.is_cocycle(&beta));
        assert!(x.is_coboundary(&beta).unwrap().is_some());
    }
}
