//! Finite abelian extensions `1 → A → Γ̃ → Γ → 1` with a marked cyclic
//! kernel `A ⊆ ℚ/ℤ`, sections, and the extension 2-cocycle
//! `c(g,h) = s(g)s(h)s(gh)⁻¹`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bar::{BarCochain, CircleMultModule};
use super::FiniteGroup;
use crate::exact::{CircleValue, Int};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("kernel is not a subgroup")]
    NotASubgroup,
    #[error("kernel is not normal")]
    NotNormal,
    #[error("kernel is not cyclic; only cyclic kernels (subgroups of ℚ/ℤ) are supported")]
    KernelNotCyclic,
    #[error("section is invalid: p∘s ≠ id")]
    SectionInvalid,
    #[error("kernel embedding into ℚ/ℤ is not an injective homomorphism")]
    EmbeddingInvalid,
    #[error("kernel is not central")]
    NotCentral,
}

/// An abelian extension with explicit total group, ordered kernel, the
/// induced quotient group, projection, and a section.
#[derive(Clone, Debug)]
pub struct ExtensionTable {
    pub total: FiniteGroup,
    /// Elements of the total group forming A, sorted by index.
    pub kernel: Vec<usize>,
    pub quotient: FiniteGroup,
    /// total element → quotient element
    pub proj: Vec<usize>,
    /// quotient element → total element, `p∘s = id`, `s(e) = e`
    pub section: Vec<usize>,
    /// The marked isomorphism A ≅ ⟨1/|A|⟩ ⊆ ℚ/ℤ, aligned with `kernel`.
    pub kernel_circle: Vec<CircleValue>,
    pub central: bool,
    kernel_pos: HashMap<usize, usize>,
}

impl ExtensionTable {
    /// Builds the extension from a total group and kernel element list;
    /// the kernel embedding sends a deterministically chosen generator
    /// to `1/|A|`, and the section is the lowest-index coset
    /// representative (identity coset excepted: `s(e) = e`).
    pub fn new(
        total: FiniteGroup,
        kernel_elements: Vec<usize>,
        section: Option<Vec<usize>>,
    ) -> Result<Self, ExtensionError> {
        let mut kernel = kernel_elements;
        kernel.sort_unstable();
        kernel.dedup();
        let ksize = kernel.len();
        let in_kernel: Vec<bool> = {
            let mut f = vec![false; total.order()];
            for &a in &kernel {
                if a >= total.order() {
                    return Err(ExtensionError::NotASubgroup);
                }
                f[a] = true;
            }
            f
        };
        if !in_kernel[total.identity()] {
            return Err(ExtensionError::NotASubgroup);
        }
        for &a in &kernel {
            if !in_kernel[total.inv(a)] {
                return Err(ExtensionError::NotASubgroup);
            }
            for &b in &kernel {
                if !in_kernel[total.mul(a, b)] {
                    return Err(ExtensionError::NotASubgroup);
                }
            }
        }
        for g in total.elements() {
            for &a in &kernel {
                if !in_kernel[total.mul(total.mul(g, a), total.inv(g))] {
                    return Err(ExtensionError::NotNormal);
                }
            }
        }

        // the kernel must be cyclic to embed into ℚ/ℤ; pick the smallest
        // generator and map it to 1/|A|
        let generator = kernel
            .iter()
            .copied()
            .find(|&a| total.element_order(a) == ksize)
            .ok_or(ExtensionError::KernelNotCyclic)?;
        let kernel_pos: HashMap<usize, usize> =
            kernel.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut kernel_circle = vec![CircleValue::zero(); ksize];
        let mut power = total.identity();
        for t in 0..ksize {
            kernel_circle[kernel_pos[&power]] =
                CircleValue::new(crate::exact::rat(t as i64, ksize as i64));
            power = total.mul(power, generator);
        }

        // cosets, quotient table, projection
        let mut coset_rep: Vec<usize> = vec![usize::MAX; total.order()];
        for g in total.elements() {
            let rep = kernel.iter().map(|&a| total.mul(g, a)).min().unwrap();
            coset_rep[g] = rep;
        }
        let mut reps: Vec<usize> = coset_rep.clone();
        reps.sort_unstable();
        reps.dedup();
        let proj: Vec<usize> = coset_rep
            .iter()
            .map(|r| reps.binary_search(r).unwrap())
            .collect();
        let qn = reps.len();
        let mut qmul = vec![vec![0usize; qn]; qn];
        for (i, &gi) in reps.iter().enumerate() {
            for (j, &gj) in reps.iter().enumerate() {
                qmul[i][j] = proj[total.mul(gi, gj)];
            }
        }
        let quotient = FiniteGroup::from_table(qmul).expect("quotient of a group is a group");

        let section = match section {
            Some(s) => {
                if s.len() != qn
                    || s.iter().any(|&t| t >= total.order())
                    || s.iter().enumerate().any(|(q, &t)| proj[t] != q)
                {
                    return Err(ExtensionError::SectionInvalid);
                }
                s
            }
            None => {
                let mut s = reps.clone();
                s[proj[total.identity()]] = total.identity();
                s
            }
        };

        let central = kernel
            .iter()
            .all(|&a| total.elements().all(|g| total.mul(a, g) == total.mul(g, a)));

        Ok(ExtensionTable {
            total,
            kernel,
            quotient,
            proj,
            section,
            kernel_circle,
            central,
            kernel_pos,
        })
    }

    /// Builds the table from fully explicit data: a quotient group, a
    /// projection, a section and a kernel embedding. Used when the
    /// quotient must literally be a given group (bundle extensions over
    /// the acting group) rather than a freshly built coset group.
    pub fn from_parts(
        total: FiniteGroup,
        quotient: FiniteGroup,
        kernel_elements: Vec<usize>,
        proj: Vec<usize>,
        section: Vec<usize>,
        embedding: &BTreeMap<usize, CircleValue>,
    ) -> Result<Self, ExtensionError> {
        let nt = total.order();
        let nq = quotient.order();
        if proj.len() != nt || proj.iter().any(|&q| q >= nq) {
            return Err(ExtensionError::SectionInvalid);
        }
        // projection must be a surjective homomorphism
        for x in 0..nt {
            for y in 0..nt {
                if proj[total.mul(x, y)] != quotient.mul(proj[x], proj[y]) {
                    return Err(ExtensionError::SectionInvalid);
                }
            }
        }
        let mut hit = vec![false; nq];
        for &q in &proj {
            hit[q] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(ExtensionError::SectionInvalid);
        }
        // kernel must be exactly the fiber of the identity
        let mut kernel = kernel_elements;
        kernel.sort_unstable();
        kernel.dedup();
        let expected: Vec<usize> = (0..nt)
            .filter(|&t| proj[t] == quotient.identity())
            .collect();
        if kernel != expected {
            return Err(ExtensionError::NotASubgroup);
        }
        if section.len() != nq || section.iter().enumerate().any(|(q, &t)| proj[t] != q) {
            return Err(ExtensionError::SectionInvalid);
        }
        let kernel_pos: HashMap<usize, usize> =
            kernel.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut kernel_circle = vec![CircleValue::zero(); kernel.len()];
        for (i, &a) in kernel.iter().enumerate() {
            kernel_circle[i] = embedding
                .get(&a)
                .ok_or(ExtensionError::EmbeddingInvalid)?
                .clone();
        }
        for (i, &a) in kernel.iter().enumerate() {
            for (j, &b) in kernel.iter().enumerate() {
                let ab = total.mul(a, b);
                if kernel_circle[kernel_pos[&ab]] != &kernel_circle[i] + &kernel_circle[j] {
                    return Err(ExtensionError::EmbeddingInvalid);
                }
                if i != j && kernel_circle[i] == kernel_circle[j] {
                    return Err(ExtensionError::EmbeddingInvalid);
                }
            }
        }
        let central = kernel
            .iter()
            .all(|&a| total.elements().all(|g| total.mul(a, g) == total.mul(g, a)));
        Ok(ExtensionTable {
            total,
            kernel,
            quotient,
            proj,
            section,
            kernel_circle,
            central,
            kernel_pos,
        })
    }

    /// Same, but with a caller-supplied embedding A → ℚ/ℤ (e.g. the
    /// natural one for gauge extensions); it must be an injective
    /// homomorphism on the kernel in its stored order.
    pub fn with_embedding(
        total: FiniteGroup,
        kernel_elements: Vec<usize>,
        embedding: &BTreeMap<usize, CircleValue>,
        section: Option<Vec<usize>>,
    ) -> Result<Self, ExtensionError> {
        let mut ext = Self::new(total, kernel_elements, section)?;
        let mut circle = vec![CircleValue::zero(); ext.kernel.len()];
        for (i, &a) in ext.kernel.iter().enumerate() {
            circle[i] = embedding
                .get(&a)
                .ok_or(ExtensionError::EmbeddingInvalid)?
                .clone();
        }
        // injective homomorphism check
        for (i, &a) in ext.kernel.iter().enumerate() {
            for (j, &b) in ext.kernel.iter().enumerate() {
                let ab = ext.total.mul(a, b);
                let pos = ext.kernel_pos[&ab];
                if circle[pos] != &circle[i] + &circle[j] {
                    return Err(ExtensionError::EmbeddingInvalid);
                }
                if i != j && circle[i] == circle[j] {
                    return Err(ExtensionError::EmbeddingInvalid);
                }
            }
        }
        ext.kernel_circle = circle;
        Ok(ext)
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel.len()
    }

    /// The kernel as a group in its own right (on kernel positions).
    pub fn kernel_group(&self) -> FiniteGroup {
        let k = self.kernel.len();
        let mut mul = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                mul[i][j] = self.kernel_pos[&self.total.mul(self.kernel[i], self.kernel[j])];
            }
        }
        FiniteGroup::from_table(mul).expect("kernel subgroup is a group")
    }

    pub fn is_kernel_element(&self, g: usize) -> bool {
        self.kernel_pos.contains_key(&g)
    }

    /// ℚ/ℤ-coordinate of a kernel element.
    pub fn circle_of(&self, a: usize) -> CircleValue {
        self.kernel_circle[self.kernel_pos[&a]].clone()
    }

    /// Kernel element with a given ℚ/ℤ-coordinate, if any.
    pub fn element_of_circle(&self, v: &CircleValue) -> Option<usize> {
        self.kernel_circle
            .iter()
            .position(|w| w == v)
            .map(|i| self.kernel[i])
    }

    /// The conjugation action of the quotient on A as circle multipliers:
    /// `a · g = s(g)⁻¹ a s(g)` (trivial for central extensions).
    pub fn conjugation_module(&self) -> CircleMultModule {
        let ksize = self.kernel_order() as i64;
        let multipliers = self
            .quotient
            .elements()
            .map(|g| {
                let s = self.section[g];
                // image of the distinguished generator under conjugation
                let gen = self
                    .kernel
                    .iter()
                    .copied()
                    .find(|&a| self.circle_of(a) == CircleValue::from_frac(1, ksize))
                    .unwrap_or(self.total.identity());
                let conj = self.total.mul(self.total.mul(self.total.inv(s), gen), s);
                let v = self.circle_of(conj);
                // v = k/|A| with the generator ↦ 1/|A|
                let k = (v.lift() * crate::exact::rat(ksize, 1)).to_integer();
                if self.kernel_order() == 1 {
                    Int::one()
                } else {
                    k
                }
            })
            .collect();
        CircleMultModule { multipliers }
    }

    /// The extension 2-cocycle `c(g,h) = s(g)s(h)s(gh)⁻¹` of a section,
    /// in ℚ/ℤ-coordinates.
    pub fn extension_class_with_section(
        &self,
        section: &[usize],
    ) -> Result<BarCochain<CircleValue>, ExtensionError> {
        let n = self.quotient.order();
        if section.len() != n || section.iter().enumerate().any(|(q, &t)| self.proj[t] != q) {
            return Err(ExtensionError::SectionInvalid);
        }
        let mut values = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let gh = self.quotient.mul(g, h);
                let prod = self.total.mul(
                    self.total.mul(section[g], section[h]),
                    self.total.inv(section[gh]),
                );
                if !self.is_kernel_element(prod) {
                    return Err(ExtensionError::SectionInvalid);
                }
                values.push(self.circle_of(prod));
            }
        }
        Ok(BarCochain { degree: 2, values })
    }

    /// Extension cocycle of the stored section.
    pub fn extension_class(&self) -> BarCochain<CircleValue> {
        self.extension_class_with_section(&self.section)
            .expect("stored section is valid")
    }

    /// A deterministic section different from the stored one (next-lowest
    /// coset representatives), when the kernel is nontrivial.
    pub fn alternate_section(&self) -> Option<Vec<usize>> {
        if self.kernel_order() == 1 {
            return None;
        }
        let section = self
            .quotient
            .elements()
            .map(|q| {
                let mut members: Vec<usize> = self
                    .total
                    .elements()
                    .filter(|&t| self.proj[t] == q)
                    .collect();
                members.sort_unstable();
                members[1]
            })
            .collect();
        Some(section)
    }
}

/// A corpus entry: a named extension given by a multiplication table and
/// kernel element list (the shared JSON interchange format).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    pub kernel: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionCorpus {
    pub schema: u32,
    pub extensions: Vec<ExtensionSpec>,
}

impl ExtensionSpec {
    pub fn build(&self) -> Result<ExtensionTable, String> {
        let total = FiniteGroup::from_table(self.table.clone()).map_err(|e| e.to_string())?;
        ExtensionTable::new(total, self.kernel.clone(), self.section.clone())
            .map_err(|e| e.to_string())
    }
}

/// The built-in extension corpus: split extensions, ℤ/4 over ℤ/2,
/// ℤ/9 over ℤ/3, Q₈ over ℤ/2×ℤ/2, and the mod-3 Heisenberg group over
/// ℤ/3×ℤ/3 (whose transgression lands in odd torsion, pinning signs).
pub fn builtin_corpus() -> ExtensionCorpus {
    let mut extensions = Vec::new();
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);

    let split22 = FiniteGroup::direct_product(&z2, &z2);
    extensions.push(ExtensionSpec {
        name: "split_z2_over_z2".into(),
        table: split22.table().clone(),
        kernel: vec![0, 2],
        section: None,
    });
    let split33 = FiniteGroup::direct_product(&z3, &z3);
    extensions.push(ExtensionSpec {
        name: "split_z3_over_z3".into(),
        table: split33.table().clone(),
        kernel: vec![0, 3, 6],
        section: None,
    });
    extensions.push(ExtensionSpec {
        name: "z4_over_z2".into(),
        table: FiniteGroup::cyclic(4).table().clone(),
        kernel: vec![0, 2],
        section: None,
    });
    extensions.push(ExtensionSpec {
        name: "z9_over_z3".into(),
        table: FiniteGroup::cyclic(9).table().clone(),
        kernel: vec![0, 3, 6],
        section: None,
    });
    extensions.push(ExtensionSpec {
        name: "q8_over_z2xz2".into(),
        table: FiniteGroup::quaternion().table().clone(),
        kernel: vec![0, 4],
        section: None,
    });
    extensions.push(ExtensionSpec {
        name: "heisenberg3_over_z3xz3".into(),
        table: heisenberg3().table().clone(),
        kernel: vec![0, 1, 2],
        section: None,
    });

    ExtensionCorpus {
        schema: 1,
        extensions,
    }
}

/// The mod-3 Heisenberg group: triples (a, b, c) with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b'), encoded as 9a + 3b + c.
pub fn heisenberg3() -> FiniteGroup {
    let enc = |a: usize, b: usize, c: usize| 9 * a + 3 * b + c;
    let mut mul = vec![vec![0usize; 27]; 27];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for a2 in 0..3 {
                    for b2 in 0..3 {
                        for c2 in 0..3 {
                            mul[enc(a, b, c)][enc(a2, b2, c2)] =
                                enc((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
                        }
                    }
                }
            }
        }
    }
    FiniteGroup::from_table(mul).expect("Heisenberg table is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcoh::bar::{
        bar_coboundary, bar_is_zero, is_group_coboundary_in_subgroup, TrivialModule,
    };

    fn class_is_zero(e: &ExtensionTable) -> bool {
        let c = e.extension_class();
        is_group_coboundary_in_subgroup(&e.quotient, &e.conjugation_module(), e.kernel_order(), &c)
            .unwrap()
            .is_some()
    }

    #[test]
    fn z4_over_z2_is_central_cyclic() {
        let e = ExtensionTable::new(FiniteGroup::cyclic(4), vec![0, 2], None).unwrap();
        assert!(e.central);
        assert_eq!(e.quotient.order(), 2);
        assert_eq!(
            e.kernel_circle,
            vec![CircleValue::zero(), CircleValue::from_frac(1, 2)]
        );
        assert!(e.conjugation_module().is_trivial());
    }

    #[test]
    fn kernel_checks() {
        // {0,1} is not a subgroup of Z/4
        assert_eq!(
            ExtensionTable::new(FiniteGroup::cyclic(4), vec![0, 1], None).unwrap_err(),
            ExtensionError::NotASubgroup
        );
        // V4 inside itself: kernel V4 is not cyclic over the trivial quotient
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(
            ExtensionTable::new(v4, vec![0, 1, 2, 3], None).unwrap_err(),
            ExtensionError::KernelNotCyclic
        );
    }

    #[test]
    fn invalid_section_rejected() {
        // p∘s ≠ id: both entries in the same coset
        let r = ExtensionTable::new(FiniteGroup::cyclic(4), vec![0, 2], Some(vec![0, 2]));
        assert_eq!(r.unwrap_err(), ExtensionError::SectionInvalid);
        let e = ExtensionTable::new(FiniteGroup::cyclic(4), vec![0, 2], None).unwrap();
        assert!(matches!(
            e.extension_class_with_section(&[1, 0]),
            Err(ExtensionError::SectionInvalid)
        ));
    }

    #[test]
    fn split_extension_has_zero_class() {
        let spec = &builtin_corpus().extensions[0];
        assert_eq!(spec.name, "split_z2_over_z2");
        let e = spec.build().unwrap();
        let c = e.extension_class();
        // the canonical section of a split product is a homomorphism
        let module = TrivialModule::<CircleValue>::new();
        assert!(bar_is_zero(
            &module,
            &bar_coboundary(&e.quotient, &module, &c)
        ));
        assert!(bar_is_zero(&module, &c));
    }

    #[test]
    fn z4_over_z2_class_is_nonzero() {
        let e = ExtensionTable::new(FiniteGroup::cyclic(4), vec![0, 2], None).unwrap();
        let c = e.extension_class();
        let module = TrivialModule::<CircleValue>::new();
        assert!(bar_is_zero(
            &module,
            &bar_coboundary(&e.quotient, &module, &c)
        ));
        // not a coboundary in A-coefficients: the extension does not split
        assert!(!class_is_zero(&e));
    }

    #[test]
    fn q8_over_v4_class_is_nonzero() {
        let e = ExtensionTable::new(FiniteGroup::quaternion(), vec![0, 4], None).unwrap();
        assert!(e.central);
        assert_eq!(e.quotient.order(), 4);
        assert_eq!(e.quotient.exponent(), 2);
        assert!(!class_is_zero(&e));
    }

    #[test]
    fn section_independence_up_to_coboundary() {
        let e = ExtensionTable::new(FiniteGroup::cyclic(4), vec![0, 2], None).unwrap();
        let c1 = e.extension_class();
        let s2 = e.alternate_section().unwrap();
        let c2 = e.extension_class_with_section(&s2).unwrap();
        let module = TrivialModule::<CircleValue>::new();
        let diff = crate::groupcoh::bar::bar_sub(&module, &c1, &c2);
        let prim = is_group_coboundary_in_subgroup(&e.quotient, &e.conjugation_module(), 2, &diff)
            .unwrap();
        assert!(
            prim.is_some(),
            "two sections must give cohomologous cocycles"
        );
    }

    #[test]
    fn heisenberg_center_extension() {
        let h = heisenberg3();
        assert_eq!(h.order(), 27);
        assert!(!h.is_abelian());
        let e = ExtensionTable::new(h, vec![0, 1, 2], None).unwrap();
        assert!(e.central);
        assert_eq!(e.quotient.order(), 9);
        assert_eq!(e.quotient.exponent(), 3);
        // non-abelian central extension: class is nonzero
        assert!(!class_is_zero(&e));
    }

    #[test]
    fn corpus_round_trips_through_json() {
        let corpus = builtin_corpus();
        let json = serde_json::to_string(&corpus).unwrap();
        let back: ExtensionCorpus = serde_json::from_str(&json).unwrap();
        assert_eq!(back.extensions.len(), corpus.extensions.len());
        for spec in &back.extensions {
            spec.build().unwrap();
        }
    }
}
