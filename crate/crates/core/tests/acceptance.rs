//! Acceptance suite: one test per criterion, each printing a PASS line
//! and enforcing its runtime budget. Criterion 9 (the 24-cell stretch
//! model) is non-gating and must be run explicitly with `--ignored`.

use std::time::{Duration, Instant};

use transgress_core::bicomplex::{lemma32_check, lemma44_check};
use transgress_core::exact::{CircleValue, Int};
use transgress_core::flatbundle::{
    build_extension, build_flat_bundle, build_theta, fiber_subgroup_order,
};
use transgress_core::gk::{
    gk_cocycle, kappa_table, lemma56_check, prop53_checks, thm13_verify, thm57_check,
};
use transgress_core::groupcoh::{
    self, bar_sub, builtin_corpus, group_cohomology_z, is_group_coboundary,
    is_group_coboundary_in_subgroup, FiniteGroup, TrivialModule,
};
use transgress_core::simplicial::fixtures::{self, subdivide_fixture, Fixture};
use transgress_core::simplicial::{Cochain, CohomologyGroup, Ring};

fn timed<T>(label: &str, budget: Duration, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    println!("ACCEPTANCE {label}: PASS ({elapsed:.2?})");
    assert!(
        elapsed <= budget,
        "{label} exceeded its budget: {elapsed:.2?} > {budget:.2?}"
    );
    out
}

fn rp2() -> Fixture {
    fixtures::rp2_minimal().unwrap()
}

fn lens(p: usize) -> Fixture {
    fixtures::lens(p, 1, 2).unwrap()
}

#[test]
fn criterion_1_cohomology_regressions() {
    timed("1 cohomology regressions", Duration::from_secs(30), || {
        let rp2 = rp2();
        assert_eq!(rp2.complex.cohomology(0, Ring::Z), CohomologyGroup::free(1));
        assert_eq!(rp2.complex.cohomology(1, Ring::Z), CohomologyGroup::free(0));
        assert_eq!(
            rp2.complex.cohomology(2, Ring::Z),
            CohomologyGroup::cyclic(2)
        );

        let rp3 = fixtures::rp3_join(2).unwrap();
        assert_eq!(
            rp3.complex.cohomology(2, Ring::Z),
            CohomologyGroup::cyclic(2)
        );

        for p in [2usize, 3, 5] {
            // independent oracle: the cellular cochain complex of a lens
            // space is ℤ →0→ ℤ →·p→ ℤ →0→ ℤ (one cell per dimension),
            // so H⁰ = ℤ, H¹ = ker(p) = 0, H² = coker(p) = ℤ/p, H³ = ℤ;
            // frozen here and compared against the triangulation route
            let l = lens(p);
            assert_eq!(l.complex.cohomology(0, Ring::Z), CohomologyGroup::free(1));
            assert_eq!(l.complex.cohomology(1, Ring::Z), CohomologyGroup::free(0));
            assert_eq!(
                l.complex.cohomology(2, Ring::Z),
                CohomologyGroup::cyclic(p as i64),
                "H²(L({p},1))"
            );
            assert_eq!(l.complex.cohomology(3, Ring::Z), CohomologyGroup::free(1));
            // and rationally the torsion disappears
            assert_eq!(l.complex.cohomology(2, Ring::Q), CohomologyGroup::free(0));
        }

        for m in [2usize, 3, 5] {
            let g = FiniteGroup::cyclic(m);
            assert_eq!(group_cohomology_z(&g, 0), CohomologyGroup::free(1));
            assert_eq!(group_cohomology_z(&g, 1), CohomologyGroup::free(0));
            assert_eq!(group_cohomology_z(&g, 2), CohomologyGroup::cyclic(m as i64));
            assert_eq!(group_cohomology_z(&g, 3), CohomologyGroup::free(0));
        }
    });
}

#[test]
fn criterion_2_gk_cocycle_identity() {
    timed("2 𝔊 cocycle identity", Duration::from_secs(40), || {
        // gk_cocycle checks the identity exhaustively over |Γ|³ triples
        // and errors out otherwise; budget is 10 s per fixture
        let cases: Vec<(Fixture, &str)> = vec![
            (rp2(), "z5"),
            (rp2(), "z2xz2"),
            (lens(3), "rot"),
            (lens(5), "rot"),
        ];
        for (fixture, action_name) in cases {
            let per_fixture = Instant::now();
            let action = &fixture.actions[action_name];
            let m = fiber_subgroup_order(&fixture.alpha_rho);
            let table = kappa_table(
                &fixture.complex,
                action,
                &fixture.alpha_rho,
                fixture.basepoint,
                m,
            )
            .unwrap();
            gk_cocycle(action, &table.normalized, fixture.basepoint).unwrap();
            assert!(
                per_fixture.elapsed() <= Duration::from_secs(10),
                "{} exceeded 10 s",
                fixture.name
            );
        }
    });
}

#[test]
fn criterion_3_prop53_independence() {
    timed("3 prop 5.3 independence", Duration::from_secs(60), || {
        let cases: Vec<(Fixture, &str)> = vec![(rp2(), "z5"), (rp2(), "z2xz2"), (lens(3), "rot")];
        for (fixture, action_name) in cases {
            let action = &fixture.actions[action_name];
            let complex = &fixture.complex;
            let n = complex.n_vertices();
            let m = fiber_subgroup_order(&fixture.alpha_rho) as i64;
            // ≥ 3 basepoints, ≥ 2 α-representatives
            let basepoints = [
                fixture.basepoint,
                (fixture.basepoint + 1) % n,
                (fixture.basepoint + 2) % n,
            ];
            let u = Cochain {
                degree: 0,
                values: (0..n)
                    .map(|v| CircleValue::from_frac((3 * v as i64 + 1) % m, m))
                    .collect(),
            };
            let shifted = fixture.alpha_rho.add(&complex.coboundary(&u));
            let alphas = vec![
                ("alpha".to_string(), fixture.alpha_rho.clone()),
                ("alpha_shifted".to_string(), shifted),
            ];
            let cert = prop53_checks(complex, action, &alphas, &basepoints).unwrap();
            assert_eq!(cert.comparisons.len(), 6);
        }
    });
}

#[test]
fn criterion_4_theta_tau_curvature() {
    timed("4 lemmas 5.4/5.5/5.6", Duration::from_secs(60), || {
        let cases: Vec<(Fixture, &str)> = vec![
            (rp2(), "z5"),
            (rp2(), "z2xz2"),
            (fixtures::rp3_join(2).unwrap(), "rot"),
            (lens(3), "rot"),
            (lens(5), "rot"),
        ];
        for (fixture, action_name) in cases {
            let action = &fixture.actions[action_name];
            let bundle = build_flat_bundle(&fixture.complex, &fixture.alpha_rho).unwrap();
            // pullback vanishing: θ′ exists (the solve must succeed)
            let theta = build_theta(&bundle, bundle.vertex(fixture.basepoint, 0)).unwrap();
            // connection normalization: τ restricted to fiber translations is the identity
            for u in 0..bundle.fiber_order {
                assert_eq!(
                    transgress_core::flatbundle::tau(&theta, &bundle.translations[u]),
                    bundle.fiber_value(u),
                    "{}: τ(t_{u}) ≠ u",
                    fixture.name
                );
            }
            // curvature identity: −δτ = π*𝔊 at the cochain level over all pairs
            let table = kappa_table(
                &fixture.complex,
                action,
                &fixture.alpha_rho,
                fixture.basepoint,
                bundle.fiber_order,
            )
            .unwrap();
            let gk = gk_cocycle(action, &table.normalized, fixture.basepoint).unwrap();
            let ext = build_extension(&bundle, action, &table.raw).unwrap();
            lemma56_check(&bundle, &ext, &theta, &gk).unwrap();
        }
    });
}

#[test]
fn criterion_5_thm57_class_identification() {
    timed("5 thm 5.7", Duration::from_secs(60), || {
        let cases: Vec<(Fixture, &str)> = vec![
            (rp2(), "z5"),
            (rp2(), "z2xz2"),
            (fixtures::rp3_join(2).unwrap(), "rot"),
            (lens(3), "rot"),
        ];
        assert!(cases.len() >= 3);
        for (fixture, action_name) in cases {
            let action = &fixture.actions[action_name];
            let bundle = build_flat_bundle(&fixture.complex, &fixture.alpha_rho).unwrap();
            let table = kappa_table(
                &fixture.complex,
                action,
                &fixture.alpha_rho,
                fixture.basepoint,
                bundle.fiber_order,
            )
            .unwrap();
            let gk = gk_cocycle(action, &table.normalized, fixture.basepoint).unwrap();
            let ext = build_extension(&bundle, action, &table.raw).unwrap();
            thm57_check(&ext, &gk).unwrap_or_else(|e| panic!("{}: {e}", fixture.name));
        }
    });
}

#[test]
fn criterion_6_main_theorem() {
    timed("6 thm 1.3", Duration::from_secs(300), || {
        let fixture = rp2();
        // ℤ/5: H³ = 0, the equality is between exact classes
        thm13_verify(
            &fixture.complex,
            &fixture.actions["z5"],
            &fixture.alpha_rho,
            fixture.basepoint,
        )
        .unwrap();
        // ℤ/2×ℤ/2: H³ ≠ 0
        let v4 = &fixture.actions["z2xz2"];
        assert!(!group_cohomology_z(&v4.group, 3).is_trivial());
        thm13_verify(&fixture.complex, v4, &fixture.alpha_rho, fixture.basepoint).unwrap();
    });
}

#[test]
fn criterion_7_extension_corpus_lemmas() {
    timed("7 lemmas 3.2/4.4 corpus", Duration::from_secs(120), || {
        let corpus = builtin_corpus();
        let names = [
            "split_z2_over_z2",
            "split_z3_over_z3",
            "z4_over_z2",
            "z9_over_z3",
            "q8_over_z2xz2",
        ];
        for name in names {
            let spec = corpus
                .extensions
                .iter()
                .find(|s| s.name == name)
                .unwrap_or_else(|| panic!("{name} missing from corpus"));
            let ext = spec.build().unwrap();
            lemma32_check(&ext).unwrap_or_else(|e| panic!("lemma32 {name}: {e}"));
            lemma44_check(&ext, &Int::from(1)).unwrap_or_else(|e| panic!("lemma44 {name}: {e}"));
        }
    });
}

#[test]
fn criterion_8_robustness() {
    timed("8 robustness", Duration::from_secs(600), || {
        let fixture = rp2();
        let sd = subdivide_fixture(&fixture).unwrap();

        for action_name in ["z5", "z2xz2"] {
            let action = &fixture.actions[action_name];
            let action_sd = &sd.actions[action_name];

            // subdivision invariance of every computed class: 𝔊, its δ,
            // and the transgressed cocycle agree across the models
            let cert = thm13_verify(
                &fixture.complex,
                action,
                &fixture.alpha_rho,
                fixture.basepoint,
            )
            .unwrap();
            let cert_sd =
                thm13_verify(&sd.complex, action_sd, &sd.alpha_rho, sd.basepoint).unwrap();

            let circle = TrivialModule::<CircleValue>::new();
            let gk_diff = bar_sub(&circle, &cert.gk, &cert_sd.gk);
            assert!(
                is_group_coboundary(&action.group, &gk_diff)
                    .unwrap()
                    .is_some(),
                "{action_name}: [𝔊] changed under subdivision"
            );
            let int_module = TrivialModule::<Int>::new();
            let w_diff = bar_sub(&int_module, &cert.transgression.w, &cert_sd.transgression.w);
            assert!(
                is_group_coboundary(&action.group, &w_diff)
                    .unwrap()
                    .is_some(),
                "{action_name}: transgressed class changed under subdivision"
            );
            let dgk_diff = bar_sub(&int_module, &cert.delta_gk, &cert_sd.delta_gk);
            assert!(
                is_group_coboundary(&action.group, &dgk_diff)
                    .unwrap()
                    .is_some(),
                "{action_name}: δ[𝔊] changed under subdivision"
            );
        }

        // section independence of extension classes, on the bundle
        // extension and on the corpus
        let action = &fixture.actions["z5"];
        let bundle = build_flat_bundle(&fixture.complex, &fixture.alpha_rho).unwrap();
        let table = kappa_table(
            &fixture.complex,
            action,
            &fixture.alpha_rho,
            fixture.basepoint,
            bundle.fiber_order,
        )
        .unwrap();
        let ext = build_extension(&bundle, action, &table.raw).unwrap();
        let c1 = ext.table.extension_class();
        let s2 = ext.table.alternate_section().unwrap();
        let c2 = ext.table.extension_class_with_section(&s2).unwrap();
        let circle = TrivialModule::<CircleValue>::new();
        let diff = bar_sub(&circle, &c1, &c2);
        assert!(is_group_coboundary_in_subgroup(
            &ext.table.quotient,
            &ext.table.conjugation_module(),
            ext.table.kernel_order(),
            &diff
        )
        .unwrap()
        .is_some());

        // κ-choice independence: extensions built from raw and from
        // normalized κ tables have cohomologous classes
        let ext_norm = build_extension(&bundle, action, &table.normalized).unwrap();
        let diff = bar_sub(
            &circle,
            &ext.table.extension_class(),
            &ext_norm.table.extension_class(),
        );
        assert!(is_group_coboundary(&action.group, &diff).unwrap().is_some());

        // deterministic byte-identical reruns of a full verification
        let again = thm13_verify(
            &fixture.complex,
            action,
            &fixture.alpha_rho,
            fixture.basepoint,
        )
        .unwrap();
        let first = thm13_verify(
            &fixture.complex,
            action,
            &fixture.alpha_rho,
            fixture.basepoint,
        )
        .unwrap();
        let a = serde_json::to_string(&transgress_core::cert::thm13_witnesses(&first)).unwrap();
        let b = serde_json::to_string(&transgress_core::cert::thm13_witnesses(&again)).unwrap();
        assert_eq!(a, b, "reruns must be byte-identical");
    });
}

#[test]
#[ignore = "stretch fixture (non-gating): run with --ignored; takes a few minutes"]
fn criterion_9_stretch_24cell() {
    timed("9 stretch ℝP³ 24-cell", Duration::from_secs(900), || {
        let fixture = fixtures::rp3_24cell().unwrap();
        let action = &fixture.actions["z2xz2"];
        let cert = thm13_verify(
            &fixture.complex,
            action,
            &fixture.alpha_rho,
            fixture.basepoint,
        )
        .unwrap();
        // report the computed value of δ[𝔊] in H³(ℤ/2×ℤ/2;ℤ), with the
        // transgression route as the independent cross-check
        let h3 = group_cohomology_z(&action.group, 3);
        let delta_gk_zero = is_group_coboundary(&action.group, &cert.delta_gk)
            .unwrap()
            .is_some();
        let w_zero = is_group_coboundary(&action.group, &cert.transgression.w)
            .unwrap()
            .is_some();
        println!(
            "24-cell finding: H³(ℤ/2×ℤ/2;ℤ) = {h3}; δ[𝔊] is {}; the transgression route agrees ({})",
            if delta_gk_zero { "ZERO" } else { "NONZERO" },
            if w_zero { "zero" } else { "nonzero" },
        );
        assert_eq!(
            delta_gk_zero, w_zero,
            "the two routes must agree on vanishing"
        );
    });
}

#[test]
fn groupcoh_invariants_on_corpus_groups() {
    // δ² = 0 exhaustively for the groups of order ≤ 8 used by the corpus,
    // all degrees ≤ 3 — cheap but broad
    let groups = vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(5),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::cyclic(8),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
        FiniteGroup::quaternion(),
    ];
    let module = TrivialModule::<CircleValue>::new();
    for g in &groups {
        for degree in 0..=3usize {
            let c = groupcoh::BarCochain {
                degree,
                values: (0..g.order().pow(degree as u32))
                    .map(|i| CircleValue::from_frac((i as i64 * 5 + 2) % 24, 24))
                    .collect(),
            };
            let dd =
                groupcoh::bar_coboundary(g, &module, &groupcoh::bar_coboundary(g, &module, &c));
            assert!(groupcoh::bar_is_zero(&module, &dd));
        }
    }
}

#[test]
fn pullback_functoriality_on_shipped_actions() {
    // exact cochain equality of (gh)* = h* ∘ g* over every shipped action
    let fixture = rp2();
    for action in fixture.actions.values() {
        let c = Cochain::from_values(
            &fixture.complex,
            1,
            (0..15).map(|i| Int::from(2 * i as i64 - 7)).collect(),
        );
        let n = action.order();
        for g in 0..n {
            for h in 0..n {
                let gh = action.group.mul(g, h);
                let lhs = fixture.complex.pullback(action.auto(gh), &c);
                let rhs = fixture.complex.pullback(
                    action.auto(h),
                    &fixture.complex.pullback(action.auto(g), &c),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn bockstein_naturality_on_shipped_actions() {
    // [bockstein(g*α)] = [g*(bockstein(α))] for every shipped action
    let fixture = rp2();
    let complex = &fixture.complex;
    let alpha = &fixture.alpha_rho;
    for action in fixture.actions.values() {
        for g in 0..action.order() {
            let lhs = complex
                .bockstein(&complex.pullback(action.auto(g), alpha))
                .unwrap();
            let rhs = complex.pullback(action.auto(g), &complex.bockstein(alpha).unwrap());
            let diff = lhs.sub(&rhs);
            assert!(complex.is_coboundary(&diff).unwrap().is_some());
        }
    }
}
