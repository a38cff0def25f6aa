//! The fixture library: ℝP² (6 vertices), lens spaces L(p,q), and the two
//! ℝP³ models, each shipped with finite rotation actions, a holonomy
//! 1-cocycle over ℚ/ℤ, and a basepoint.

use std::collections::BTreeMap;

use num_integer::Integer;
use thiserror::Error;

use super::quotient::{descend_automorphism, orbit_representatives, quotient_by_free_action};
use super::subdivision::barycentric_subdivide;
use super::{
    Cochain, ComplexError, FiniteGroupAction, QuotientError, Ring, SimplicialAutomorphism,
    SimplicialComplex, SimplicialMap,
};
use crate::exact::CircleValue;
use crate::groupcoh::FiniteGroup;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("quotient stayed irregular after {0} subdivisions")]
    SubdivisionBudgetExceeded(usize),
    #[error("lens space parameters require p ≥ 2 and gcd(p, q) = 1")]
    BadLensParameters,
    #[error("fixture validation failed: {0}")]
    Validation(String),
}

/// A verification fixture: complex, named actions, the ρ-representative
/// edge cocycle α_ρ, and a basepoint.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub complex: SimplicialComplex,
    pub actions: BTreeMap<String, FiniteGroupAction>,
    /// Generator permutations each action was built from (kept for
    /// serialization).
    pub action_generators: BTreeMap<String, Vec<Vec<usize>>>,
    pub alpha_rho: Cochain<CircleValue>,
    pub basepoint: usize,
    /// Informational notes (e.g. whether actions are rotations assumed to
    /// lie in the identity component). Not verified by the artifact.
    pub metadata: BTreeMap<String, String>,
}

impl Fixture {
    /// Assembles and build-time-validates a fixture: actions generated
    /// and checked, dα_ρ = 0, H¹(X;ℤ) rank zero.
    pub fn from_raw_parts(
        name: &str,
        complex: SimplicialComplex,
        generators: BTreeMap<String, Vec<Vec<usize>>>,
        alpha_rho: Cochain<CircleValue>,
        basepoint: usize,
    ) -> Result<Self, FixtureError> {
        let mut actions = BTreeMap::new();
        for (action_name, gens) in &generators {
            let action = FiniteGroupAction::from_generators(&complex, gens)?;
            actions.insert(action_name.clone(), action);
        }
        if !complex.is_cocycle(&alpha_rho) {
            return Err(FixtureError::Validation(format!("{name}: dα_ρ ≠ 0")));
        }
        let h1 = complex.cohomology(1, Ring::Z);
        if h1.rank != 0 {
            return Err(FixtureError::Validation(format!(
                "{name}: H¹ has rank {} ≠ 0",
                h1.rank
            )));
        }
        Ok(Fixture {
            name: name.to_string(),
            complex,
            actions,
            action_generators: generators,
            alpha_rho,
            basepoint,
            metadata: BTreeMap::new(),
        })
    }

    /// Full validation: the cheap build-time checks plus H¹ torsion-freeness
    /// of the standing assumption profile and nontriviality of the
    /// Bockstein image of `[α_ρ]`.
    pub fn validate(&self) -> Result<(), FixtureError> {
        for (name, action) in &self.actions {
            if !action.is_homomorphism() {
                return Err(FixtureError::Validation(format!(
                    "{}: action {name} is not a homomorphism",
                    self.name
                )));
            }
        }
        if !self.complex.is_cocycle(&self.alpha_rho) {
            return Err(FixtureError::Validation(format!("{}: dα_ρ ≠ 0", self.name)));
        }
        let beta = self
            .complex
            .bockstein(&self.alpha_rho)
            .map_err(|e| FixtureError::Validation(format!("{}: {e}", self.name)))?;
        match self.complex.is_coboundary(&beta) {
            Ok(None) => {}
            Ok(Some(_)) => {
                return Err(FixtureError::Validation(format!(
                    "{}: Bockstein of α_ρ is a coboundary (class is zero)",
                    self.name
                )))
            }
            Err(e) => return Err(FixtureError::Validation(format!("{}: {e}", self.name))),
        }
        if self.basepoint >= self.complex.n_vertices() {
            return Err(FixtureError::Validation(format!(
                "{}: basepoint out of range",
                self.name
            )));
        }
        Ok(())
    }
}

/// The icosahedron boundary, labeled so the antipodal map is simplicial:
/// poles 0 and 6, upper pentagon 1–5, lower pentagon 7–11; the antipode
/// of `1+k` is `7+((k+2) mod 5)`.
pub fn icosahedron() -> (SimplicialComplex, SimplicialAutomorphism) {
    let u = |k: usize| 1 + k % 5;
    let l = |k: usize| 7 + k % 5;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for k in 0..5 {
        facets.push(vec![0, u(k), u(k + 1)]);
        facets.push(vec![6, l(k), l(k + 1)]);
        facets.push(vec![u(k), l(k), u(k + 1)]);
        facets.push(vec![l(k), u(k + 1), l(k + 1)]);
    }
    let x = SimplicialComplex::from_facets(12, &facets).expect("icosahedron is valid");
    let mut perm = vec![0; 12];
    perm[0] = 6;
    perm[6] = 0;
    for k in 0..5 {
        perm[u(k)] = l(k + 2);
        perm[l(k + 2)] = u(k);
    }
    let antipodal = SimplicialAutomorphism::new(&x, perm).expect("antipodal map is simplicial");
    (x, antipodal)
}

/// The 6-vertex triangulation of ℝP² (antipodal quotient of the
/// icosahedron), with its ℤ/5 and ℤ/2×ℤ/2 rotation subgroups and the
/// holonomy cocycle of the double cover.
pub fn rp2_minimal() -> Result<Fixture, FixtureError> {
    let facets: Vec<Vec<usize>> = RP2_FACETS.iter().map(|f| f.to_vec()).collect();
    let complex = SimplicialComplex::from_facets(6, &facets)?;
    let mut alpha = Cochain::zero(&complex, 1);
    for &(u, v) in RP2_HALF_EDGES {
        let idx = complex.index_of(&[u, v]).expect("rp2 edge");
        alpha.values[idx] = CircleValue::from_frac(1, 2);
    }
    let mut generators = BTreeMap::new();
    generators.insert("z5".to_string(), vec![vec![0, 2, 3, 4, 5, 1]]);
    generators.insert(
        "z2xz2".to_string(),
        vec![vec![0, 1, 5, 4, 3, 2], vec![1, 0, 2, 4, 3, 5]],
    );
    let mut fixture = Fixture::from_raw_parts("rp2_minimal", complex, generators, alpha, 0)?;
    fixture.metadata.insert(
        "identity_component".to_string(),
        "actions are icosahedral rotations of the double cover; assumed isotopic to the identity (not verified)".to_string(),
    );
    Ok(fixture)
}

const RP2_FACETS: &[[usize; 3]] = &[
    [0, 1, 2],
    [0, 1, 5],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [1, 2, 4],
    [1, 3, 4],
    [1, 3, 5],
    [2, 3, 5],
    [2, 4, 5],
];

/// Edges of `rp2_minimal` where the holonomy cocycle takes the value 1/2
/// (derived from the icosahedron double cover with minimal-vertex
/// representatives; regression-tested against that construction).
const RP2_HALF_EDGES: &[(usize, usize)] = &[(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];

/// Join of two cycle graphs: a triangulation of S³ with `m + n` vertices
/// and `m·n` tetrahedra.
pub fn join_of_cycles(m: usize, n: usize) -> SimplicialComplex {
    assert!(m >= 3 && n >= 3);
    let mut facets = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            facets.push(vec![i, (i + 1) % m, m + j, m + (j + 1) % n]);
        }
    }
    SimplicialComplex::from_facets(m + n, &facets).expect("join of cycles is valid")
}

/// Carries a cover with a deck action and named extra automorphisms
/// through barycentric subdivision until the deck action quotients
/// regularly.
struct QuotientBuild {
    cover: SimplicialComplex,
    deck: FiniteGroupAction,
    quotient: SimplicialComplex,
    projection: SimplicialMap,
    extras: Vec<(String, SimplicialAutomorphism)>,
    subdivisions: usize,
}

fn build_regular_quotient(
    x: SimplicialComplex,
    deck: FiniteGroupAction,
    extras: Vec<(String, SimplicialAutomorphism)>,
    max_subdivisions: usize,
) -> Result<QuotientBuild, FixtureError> {
    let mut cover = x;
    let mut deck = deck;
    let mut extras = extras;
    for subdivisions in 0..=max_subdivisions {
        match quotient_by_free_action(&cover, &deck) {
            Ok((quotient, projection)) => {
                return Ok(QuotientBuild {
                    cover,
                    deck,
                    quotient,
                    projection,
                    extras,
                    subdivisions,
                })
            }
            Err(QuotientError::NotRegular { .. }) => {
                let sd = barycentric_subdivide(&cover);
                deck = sd.induced_action(&cover, &deck);
                extras = extras
                    .into_iter()
                    .map(|(name, auto)| (name, sd.induced_automorphism(&cover, &auto)))
                    .collect();
                cover = sd.complex;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(FixtureError::SubdivisionBudgetExceeded(max_subdivisions))
}

/// Character of a cyclic deck action generated by `generator_index`:
/// element `γ^t ↦ t/p`.
fn cyclic_character(
    deck: &FiniteGroupAction,
    generator: &SimplicialAutomorphism,
) -> Vec<CircleValue> {
    let p = deck.order();
    let mut chi = vec![CircleValue::zero(); p];
    let mut current = SimplicialAutomorphism {
        perm: (0..generator.perm.len()).collect(),
    };
    for t in 0..p {
        let idx = deck
            .autos
            .iter()
            .position(|a| a == &current)
            .expect("power of the generator is in the deck group");
        chi[idx] = CircleValue::new(crate::exact::rat(t as i64, p as i64));
        current = generator.compose(&current);
    }
    chi
}

/// Holonomy edge cocycle of a regular covering: for a quotient edge, lift
/// the lower endpoint's representative and read off the deck element
/// carrying the other representative onto the actual lift.
pub fn holonomy_cocycle(
    cover: &SimplicialComplex,
    deck: &FiniteGroupAction,
    quotient: &SimplicialComplex,
    projection: &SimplicialMap,
    character: &[CircleValue],
) -> Cochain<CircleValue> {
    let reps = orbit_representatives(projection, quotient);
    let values = quotient
        .simplices(1)
        .iter()
        .map(|edge| {
            let (sa, sb) = (reps[edge[0]], reps[edge[1]]);
            let mut found: Option<usize> = None;
            for g in 0..deck.order() {
                let w = deck.auto(g).apply(sb);
                let mut e = vec![sa, w];
                e.sort_unstable();
                if cover.index_of(&e).is_some() {
                    assert!(
                        found.is_none(),
                        "multiple lifts of an edge; covering not regular"
                    );
                    found = Some(g);
                }
            }
            let g = found.expect("edge of the quotient lifts to the cover");
            character[g].clone()
        })
        .collect();
    Cochain { degree: 1, values }
}

/// The lens space L(p, q) as the quotient of (a subdivision of)
/// `C_{2p} * C_{2p}` by the ℤ/p deck action `(+2, +2q)`, shipped with the
/// residual circle rotation (order 2p) and the holonomy cocycle with
/// value 1/p on the deck generator.
pub fn lens(p: usize, q: usize, max_subdivisions: usize) -> Result<Fixture, FixtureError> {
    lens_named(&format!("lens_{p}_{q}"), p, q, max_subdivisions)
}

fn lens_named(
    name: &str,
    p: usize,
    q: usize,
    max_subdivisions: usize,
) -> Result<Fixture, FixtureError> {
    if p < 2 || q == 0 || q.gcd(&p) != 1 {
        return Err(FixtureError::BadLensParameters);
    }
    let m = 2 * p;
    let join = join_of_cycles(m, m);
    let shift = |a_steps: usize, b_steps: usize| -> Vec<usize> {
        (0..m)
            .map(|i| (i + a_steps) % m)
            .chain((0..m).map(|j| m + (j + b_steps) % m))
            .collect()
    };
    let deck_gen = SimplicialAutomorphism::new(&join, shift(2, (2 * q) % m))
        .expect("deck shift is simplicial");
    let rotation = SimplicialAutomorphism::new(&join, shift(1, 0)).expect("rotation is simplicial");
    let deck = FiniteGroupAction::from_generators(&join, std::slice::from_ref(&deck_gen.perm))?;
    assert_eq!(deck.order(), p);

    // character on the original deck; element indices survive subdivision
    let chi = cyclic_character(&deck, &deck_gen);

    let build = build_regular_quotient(
        join,
        deck,
        vec![("rot".to_string(), rotation)],
        max_subdivisions,
    )?;
    let alpha = holonomy_cocycle(
        &build.cover,
        &build.deck,
        &build.quotient,
        &build.projection,
        &chi,
    );

    let mut generators = BTreeMap::new();
    for (gen_name, auto) in &build.extras {
        let descended = descend_automorphism(auto, &build.projection, &build.quotient);
        generators.insert(gen_name.clone(), vec![descended.perm]);
    }
    let mut fixture = Fixture::from_raw_parts(name, build.quotient, generators, alpha, 0)?;
    fixture.metadata.insert(
        "identity_component".to_string(),
        "the rot action is the residual circle rotation; assumed isotopic to the identity (not verified)"
            .to_string(),
    );
    fixture
        .metadata
        .insert("subdivisions".to_string(), build.subdivisions.to_string());
    Ok(fixture)
}

/// The mandatory ℝP³ model: L(2,1) via the join C₄ * C₄ with the
/// antipodal deck action.
pub fn rp3_join(max_subdivisions: usize) -> Result<Fixture, FixtureError> {
    lens_named("rp3_join", 2, 1, max_subdivisions)
}

/// Exact doubled coordinates of the 24 unit Hurwitz quaternions.
fn cell24_vertices() -> Vec<[i64; 4]> {
    let mut vs = Vec::new();
    for axis in 0..4 {
        for sign in [2i64, -2] {
            let mut v = [0i64; 4];
            v[axis] = sign;
            vs.push(v);
        }
    }
    for mask in 0..16u32 {
        let v = [
            if mask & 1 == 0 { 1 } else { -1 },
            if mask & 2 == 0 { 1 } else { -1 },
            if mask & 4 == 0 { 1 } else { -1 },
            if mask & 8 == 0 { 1 } else { -1 },
        ];
        vs.push(v);
    }
    vs.sort_unstable();
    vs
}

fn quat_neg(v: [i64; 4]) -> [i64; 4] {
    [-v[0], -v[1], -v[2], -v[3]]
}

/// Left multiplication by i on (a, b, c, d) = a + bi + cj + dk.
fn quat_left_i(v: [i64; 4]) -> [i64; 4] {
    [-v[1], v[0], -v[3], v[2]]
}

/// Left multiplication by j.
fn quat_left_j(v: [i64; 4]) -> [i64; 4] {
    [-v[2], v[3], v[0], -v[1]]
}

/// The barycentric subdivision (order complex of the face lattice) of the
/// 24-cell boundary, with the antipodal and left-translation symmetries
/// as simplicial automorphisms.
pub fn cell24_order_complex() -> (
    SimplicialComplex,
    SimplicialAutomorphism,
    SimplicialAutomorphism,
    SimplicialAutomorphism,
) {
    let verts = cell24_vertices();
    let vid: BTreeMap<[i64; 4], usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let dot = |a: &[i64; 4], b: &[i64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();

    // edges: unit quaternions at inner product 1/2 (doubled dot 2)
    let mut edges: Vec<[usize; 2]> = Vec::new();
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            if dot(&verts[a], &verts[b]) == 2 {
                edges.push([a, b]);
            }
        }
    }
    assert_eq!(edges.len(), 96);

    // octahedral cells: argmax set of each of the 24 centers (±1,±1,0,0)
    let mut centers: Vec<[i64; 4]> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut c = [0i64; 4];
                c[i] = si;
                c[j] = sj;
                centers.push(c);
            }
        }
    }
    assert_eq!(centers.len(), 24);
    centers.sort_unstable();
    let mut cells: Vec<Vec<usize>> = centers
        .iter()
        .map(|c| {
            let cell: Vec<usize> = (0..verts.len())
                .filter(|&v| dot(&verts[v], c) == 2)
                .collect();
            assert_eq!(cell.len(), 6, "octahedral cell");
            cell
        })
        .collect();
    cells.sort_unstable();

    // triangular faces: pairwise-adjacent triples inside a cell
    let mut face_set: std::collections::BTreeSet<[usize; 3]> = std::collections::BTreeSet::new();
    let adjacent = |a: usize, b: usize| dot(&verts[a], &verts[b]) == 2;
    for cell in &cells {
        for x in 0..6 {
            for y in x + 1..6 {
                for z in y + 1..6 {
                    let (a, b, c) = (cell[x], cell[y], cell[z]);
                    if adjacent(a, b) && adjacent(a, c) && adjacent(b, c) {
                        face_set.insert([a, b, c]);
                    }
                }
            }
        }
    }
    let faces: Vec<[usize; 3]> = face_set.into_iter().collect();
    assert_eq!(faces.len(), 96);

    let eid: BTreeMap<[usize; 2], usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let fid: BTreeMap<[usize; 3], usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let cid: BTreeMap<Vec<usize>, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();

    // order-complex vertex layout: vertices, edges, faces, cells
    let (eo, fo, co) = (24usize, 24 + 96, 24 + 96 + 96);
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(1152);
    for (ci, cell) in cells.iter().enumerate() {
        for (fi, face) in faces.iter().enumerate() {
            if !face.iter().all(|v| cell.contains(v)) {
                continue;
            }
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let e = [face[a], face[b]];
                let ei = eid[&e];
                for &v in &e {
                    facets.push(vec![v, eo + ei, fo + fi, co + ci]);
                }
            }
        }
    }
    assert_eq!(facets.len(), 1152);
    let complex = SimplicialComplex::from_facets(co + 24, &facets).expect("24-cell order complex");

    // a quaternion map induces a permutation of every lattice level
    let induced = |f: &dyn Fn([i64; 4]) -> [i64; 4]| -> SimplicialAutomorphism {
        let vperm: Vec<usize> = verts.iter().map(|&v| vid[&f(v)]).collect();
        let mut perm = Vec::with_capacity(co + 24);
        perm.extend(vperm.iter().cloned());
        for e in &edges {
            let mut img = [vperm[e[0]], vperm[e[1]]];
            img.sort_unstable();
            perm.push(eo + eid[&img]);
        }
        for f3 in &faces {
            let mut img = [vperm[f3[0]], vperm[f3[1]], vperm[f3[2]]];
            img.sort_unstable();
            perm.push(fo + fid[&img]);
        }
        for c in &cells {
            let mut img: Vec<usize> = c.iter().map(|&v| vperm[v]).collect();
            img.sort_unstable();
            perm.push(co + cid[&img]);
        }
        SimplicialAutomorphism::new(&complex, perm).expect("lattice symmetry is simplicial")
    };

    let antipodal = induced(&quat_neg);
    let left_i = induced(&quat_left_i);
    let left_j = induced(&quat_left_j);
    (complex, antipodal, left_i, left_j)
}

/// The stretch ℝP³ model: antipodal quotient of the subdivided 24-cell
/// boundary, carrying the ℤ/2×ℤ/2 left-translation action of
/// Q₈/{±1}.
pub fn rp3_24cell() -> Result<Fixture, FixtureError> {
    let (cover, antipodal, left_i, left_j) = cell24_order_complex();
    let deck = FiniteGroupAction::from_parts(
        FiniteGroup::cyclic(2),
        vec![SimplicialAutomorphism::identity(&cover), antipodal],
    );
    let (quotient, projection) = quotient_by_free_action(&cover, &deck)?;
    let chi = vec![CircleValue::zero(), CircleValue::from_frac(1, 2)];
    let alpha = holonomy_cocycle(&cover, &deck, &quotient, &projection, &chi);

    let di = descend_automorphism(&left_i, &projection, &quotient);
    let dj = descend_automorphism(&left_j, &projection, &quotient);
    let mut generators = BTreeMap::new();
    generators.insert("z2xz2".to_string(), vec![di.perm, dj.perm]);

    let mut fixture = Fixture::from_raw_parts("rp3_24cell", quotient, generators, alpha, 0)?;
    fixture.metadata.insert(
        "identity_component".to_string(),
        "left translations of ℝP³ ≅ SO(3); assumed isotopic to the identity (not verified)"
            .to_string(),
    );
    Ok(fixture)
}

/// One barycentric subdivision of a fixture: the action is induced, the
/// holonomy cocycle transported along the last-vertex transfer, and the
/// basepoint keeps its index (original vertices form the first block of
/// subdivision vertices).
pub fn subdivide_fixture(f: &Fixture) -> Result<Fixture, FixtureError> {
    let sd = barycentric_subdivide(&f.complex);
    let alpha = sd
        .complex
        .pullback_along(&sd.transfer, &f.complex, &f.alpha_rho);
    let mut generators = BTreeMap::new();
    for (name, gens) in &f.action_generators {
        let induced: Vec<Vec<usize>> = gens
            .iter()
            .map(|g| {
                let auto = SimplicialAutomorphism { perm: g.clone() };
                sd.induced_automorphism(&f.complex, &auto).perm
            })
            .collect();
        generators.insert(name.clone(), induced);
    }
    let mut out = Fixture::from_raw_parts(
        &format!("{}_sd", f.name),
        sd.complex,
        generators,
        alpha,
        f.basepoint,
    )?;
    out.metadata = f.metadata.clone();
    Ok(out)
}

/// Builds a fixture by name. `lens_p_q` names are accepted for small
/// parameters, e.g. `lens_3_1`.
pub fn by_name(name: &str, max_subdivisions: usize) -> Result<Fixture, FixtureError> {
    match name {
        "rp2_minimal" => rp2_minimal(),
        "rp3_join" => rp3_join(max_subdivisions),
        "rp3_24cell" => rp3_24cell(),
        other => {
            if let Some(rest) = other.strip_prefix("lens_") {
                let parts: Vec<&str> = rest.split('_').collect();
                if parts.len() == 2 {
                    if let (Ok(p), Ok(q)) = (parts[0].parse(), parts[1].parse()) {
                        return lens(p, q, max_subdivisions);
                    }
                }
            }
            Err(FixtureError::Validation(format!(
                "unknown fixture name: {other}"
            )))
        }
    }
}

pub const FIXTURE_NAMES: &[&str] = &[
    "rp2_minimal",
    "lens_2_1",
    "lens_3_1",
    "lens_5_1",
    "rp3_join",
    "rp3_24cell",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rp2_matches_the_icosahedron_quotient() {
        let (x, antipodal) = icosahedron();
        let deck = FiniteGroupAction::from_parts(
            FiniteGroup::cyclic(2),
            vec![SimplicialAutomorphism::identity(&x), antipodal],
        );
        let (q, p) = quotient_by_free_action(&x, &deck).unwrap();
        let fixture = rp2_minimal().unwrap();
        assert_eq!(q, fixture.complex);
        let chi = vec![CircleValue::zero(), CircleValue::from_frac(1, 2)];
        let alpha = holonomy_cocycle(&x, &deck, &q, &p, &chi);
        assert_eq!(alpha, fixture.alpha_rho);
    }

    #[test]
    fn rp2_cohomology_and_symmetries() {
        let f = rp2_minimal().unwrap();
        assert_eq!(f.complex.f_vector(), vec![6, 15, 10]);
        assert_eq!(
            f.complex.cohomology(0, Ring::Z),
            super::super::CohomologyGroup::free(1)
        );
        assert_eq!(
            f.complex.cohomology(1, Ring::Z),
            super::super::CohomologyGroup::free(0)
        );
        assert_eq!(
            f.complex.cohomology(2, Ring::Z),
            super::super::CohomologyGroup::cyclic(2)
        );
        assert_eq!(f.actions["z5"].order(), 5);
        assert_eq!(f.actions["z2xz2"].order(), 4);
        assert_eq!(f.actions["z2xz2"].group.exponent(), 2);
        f.validate().unwrap();
    }

    #[test]
    fn rp2_automorphism_group_has_order_60() {
        let f = rp2_minimal().unwrap();
        let mut count = 0;
        let mut state: Vec<usize> = (0..6).collect();
        super::super::subdivision::test_permutations(&mut state, 0, &mut |perm| {
            if SimplicialAutomorphism::new(&f.complex, perm.to_vec()).is_ok() {
                count += 1;
            }
        });
        assert_eq!(count, 60);
    }

    #[test]
    fn rp3_join_is_a_rp3() {
        let f = rp3_join(2).unwrap();
        assert_eq!(f.metadata["subdivisions"], "1");
        assert_eq!(
            f.complex.cohomology(0, Ring::Z),
            super::super::CohomologyGroup::free(1)
        );
        assert_eq!(
            f.complex.cohomology(1, Ring::Z),
            super::super::CohomologyGroup::free(0)
        );
        assert_eq!(
            f.complex.cohomology(2, Ring::Z),
            super::super::CohomologyGroup::cyclic(2)
        );
        assert_eq!(f.actions["rot"].order(), 4);
        f.validate().unwrap();
    }

    #[test]
    fn lens_3_1_cohomology() {
        let f = lens(3, 1, 2).unwrap();
        assert_eq!(
            f.complex.cohomology(1, Ring::Z),
            super::super::CohomologyGroup::free(0)
        );
        assert_eq!(
            f.complex.cohomology(2, Ring::Z),
            super::super::CohomologyGroup::cyclic(3)
        );
        assert_eq!(f.actions["rot"].order(), 6);
        f.validate().unwrap();
    }

    #[test]
    fn rp3_24cell_model() {
        let f = rp3_24cell().unwrap();
        assert_eq!(f.complex.f_vector(), vec![120, 696, 1152, 576]);
        assert_eq!(
            f.complex.cohomology(2, Ring::Z),
            super::super::CohomologyGroup::cyclic(2)
        );
        let v4 = &f.actions["z2xz2"];
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.group.exponent(), 2);
        f.validate().unwrap();
    }

    #[test]
    fn bad_lens_parameters_rejected() {
        assert!(matches!(
            lens(1, 1, 2),
            Err(FixtureError::BadLensParameters)
        ));
        assert!(matches!(
            lens(4, 2, 2),
            Err(FixtureError::BadLensParameters)
        ));
    }

    #[test]
    fn quaternion_maps_compose_correctly() {
        let v = [1i64, 1, -1, 1];
        // i·(i·v) = -v
        assert_eq!(quat_left_i(quat_left_i(v)), quat_neg(v));
        assert_eq!(quat_left_j(quat_left_j(v)), quat_neg(v));
    }
}
