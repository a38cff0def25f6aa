//! Cross-module integration checks: full symmetry-group κ solvability,
//! covering-space regressions for bundle total spaces, and certificate
//! lifecycle on a second fixture family.

use transgress_core::cert::{self, Certificate, CertificateInputs, Witnesses};
use transgress_core::exact::CircleValue;
use transgress_core::fixture_io::FixtureFile;
use transgress_core::flatbundle::build_flat_bundle;
use transgress_core::gk::{gk_cocycle, kappa_table, thm13_verify};
use transgress_core::simplicial::fixtures;
use transgress_core::simplicial::{Cochain, Ring, SimplicialAutomorphism};

/// Every automorphism of the 6-vertex projective plane preserves the
/// holonomy class (it is the only nonzero class), so the κ solve
/// succeeds across the whole order-60 symmetry group.
#[test]
fn kappa_solvable_for_all_sixty_symmetries() {
    let fixture = fixtures::rp2_minimal().unwrap();
    let complex = &fixture.complex;
    let alpha = &fixture.alpha_rho;
    let mut count = 0;
    let mut state: Vec<usize> = (0..6).collect();
    permutations(&mut state, 0, &mut |perm| {
        if let Ok(auto) = SimplicialAutomorphism::new(complex, perm.to_vec()) {
            count += 1;
            let rhs = complex.pullback(&auto, alpha).sub(alpha);
            let kappa = complex
                .is_coboundary_in_subgroup(&rhs, 2)
                .unwrap()
                .expect("every symmetry preserves the class");
            assert_eq!(complex.coboundary(&kappa), rhs);
        }
    });
    assert_eq!(count, 60);
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

/// The flat bundle over L(5,1) with holonomy 1/5 is a connected 5-fold
/// cover with the cohomology profile of the 3-sphere model.
#[test]
fn lens5_bundle_is_the_three_sphere_cover() {
    let fixture = fixtures::lens(5, 1, 2).unwrap();
    let bundle = build_flat_bundle(&fixture.complex, &fixture.alpha_rho).unwrap();
    assert_eq!(bundle.fiber_order, 5);
    assert_eq!(bundle.component_count(), 1);
    assert_eq!(bundle.total.cohomology(1, Ring::Z).rank, 0);
    assert!(bundle.total.cohomology(1, Ring::Z).torsion.is_empty());
    let h2 = bundle.total.cohomology(2, Ring::Z);
    assert_eq!(h2.rank, 0);
    assert!(h2.torsion.is_empty());
}

/// 𝔊 on the lens rotation takes values in the fiber subgroup.
#[test]
fn gk_values_live_in_the_fiber_subgroup() {
    let fixture = fixtures::lens(3, 1, 2).unwrap();
    let action = &fixture.actions["rot"];
    let table = kappa_table(
        &fixture.complex,
        action,
        &fixture.alpha_rho,
        fixture.basepoint,
        3,
    )
    .unwrap();
    let gk = gk_cocycle(action, &table.normalized, fixture.basepoint).unwrap();
    for v in &gk.values {
        assert!(v.is_zero() || v.order() == 3.into());
    }
}

/// Certificate lifecycle on the join model of ℝP³, including a
/// subdivided run (the certificate embeds the subdivision level and the
/// re-checker reproduces it).
#[test]
fn rp3_certificate_lifecycle() {
    let fixture = fixtures::rp3_join(2).unwrap();
    let file = FixtureFile::from_fixture(&fixture);
    let cert13 = thm13_verify(
        &fixture.complex,
        &fixture.actions["rot"],
        &fixture.alpha_rho,
        fixture.basepoint,
    )
    .unwrap();
    let cert = Certificate::new(
        "thm13",
        CertificateInputs::Fixture {
            fixture: file,
            action: "rot".into(),
            subdivide: 0,
        },
        Witnesses::Thm13(Box::new(cert::thm13_witnesses(&cert13))),
    );
    let json = cert.to_json();
    let back = Certificate::from_json(&json).unwrap();
    cert::recheck(&back).unwrap();
}

/// A cochain-level subdivision run through the certificate pipeline:
/// verify on sd(ℝP²₆) with the action induced and α transported.
#[test]
fn subdivided_certificate_rechecks() {
    let fixture = fixtures::rp2_minimal().unwrap();
    let file = FixtureFile::from_fixture(&fixture);
    let sd = fixtures::subdivide_fixture(&fixture).unwrap();
    let cert13 = thm13_verify(&sd.complex, &sd.actions["z5"], &sd.alpha_rho, sd.basepoint).unwrap();
    let cert = Certificate::new(
        "thm13",
        CertificateInputs::Fixture {
            fixture: file,
            action: "z5".into(),
            subdivide: 1,
        },
        Witnesses::Thm13(Box::new(cert::thm13_witnesses(&cert13))),
    );
    cert::recheck(&Certificate::from_json(&cert.to_json()).unwrap()).unwrap();
}

/// The main identity also closes on a lens space with its order-6
/// rotation (the certified classes are exact there).
#[test]
fn thm13_on_lens3() {
    let fixture = fixtures::lens(3, 1, 2).unwrap();
    let cert = thm13_verify(
        &fixture.complex,
        &fixture.actions["rot"],
        &fixture.alpha_rho,
        fixture.basepoint,
    )
    .unwrap();
    assert_eq!(cert.lemma56_pairs, (6 * 3) * (6 * 3));
}

/// d∘d = 0 across every fixture, every ring, low degrees — the blanket
/// structural invariant.
#[test]
fn d_squared_zero_on_every_fixture() {
    let fixtures_list: Vec<fixtures::Fixture> = vec![
        fixtures::rp2_minimal().unwrap(),
        fixtures::rp3_join(2).unwrap(),
        fixtures::lens(3, 1, 2).unwrap(),
    ];
    for f in &fixtures_list {
        for q in 0..f.complex.dimension() {
            let c = Cochain::from_values(
                &f.complex,
                q,
                (0..f.complex.num_simplices(q))
                    .map(|i| CircleValue::from_frac((7 * i as i64 + 1) % 30, 30))
                    .collect(),
            );
            assert!(f.complex.coboundary(&f.complex.coboundary(&c)).is_zero());
        }
    }
}
