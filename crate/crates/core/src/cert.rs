//! Schema-versioned JSON certificates with embedded inputs and full
//! witness chains, and the independent re-checker: every verdict can be
//! confirmed by evaluating the witness equations alone, with no linear
//! solving.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact::{CircleValue, Int};
use crate::fixture_io::FixtureFile;
use crate::flatbundle::{build_extension, build_flat_bundle, tau, BundleExtension, FlatBundle};
use crate::gk::{Prop53Certificate, Thm13Certificate, Thm57Certificate};
use crate::groupcoh::{
    bar_coboundary, BarCochain, CircleMultModule, ExtensionCorpus, ExtensionTable, FiniteGroup,
    TrivialModule,
};
use crate::simplicial::fixtures::{subdivide_fixture, Fixture};
use crate::simplicial::{Cochain, FiniteGroupAction, SimplicialComplex};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum RecheckError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate schema {0}")]
    BadSchema(u32),
    #[error("inputs digest mismatch (stored {stored}, computed {computed})")]
    DigestMismatch { stored: String, computed: String },
    #[error("certificate verdict is {0}, nothing to confirm")]
    NotAPass(String),
    #[error("could not rebuild inputs: {0}")]
    BadInputs(String),
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateInputs {
    Fixture {
        fixture: FixtureFile,
        action: String,
        #[serde(default)]
        subdivide: usize,
    },
    Corpus {
        corpus: ExtensionCorpus,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        extension: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub claim: String,
    pub inputs: CertificateInputs,
    pub inputs_digest: String,
    pub verdict: String,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "claim_kind", rename_all = "snake_case")]
pub enum Witnesses {
    Thm13(Box<Thm13Witnesses>),
    Thm57(Thm57Witnesses),
    Lemma56(Lemma56Witnesses),
    Prop53(Prop53Witnesses),
    Lemma32 { entries: Vec<Lemma32Witnesses> },
    Lemma44 { entries: Vec<Lemma44Witnesses> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm13Witnesses {
    pub kappa_raw: Vec<Vec<CircleValue>>,
    pub kappa_normalized: Vec<Vec<CircleValue>>,
    pub gk: Vec<CircleValue>,
    pub theta_prime: Vec<CircleValue>,
    pub z: Vec<CircleValue>,
    pub theta: Vec<CircleValue>,
    pub extension_cocycle: Vec<CircleValue>,
    pub thm57_witness: Vec<CircleValue>,
    pub bockstein: Vec<String>,
    pub b1: Vec<Vec<String>>,
    pub b2: Vec<Vec<String>>,
    pub w: Vec<String>,
    pub delta_gk: Vec<String>,
    pub final_witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm57Witnesses {
    pub kappa_raw: Vec<Vec<CircleValue>>,
    pub kappa_normalized: Vec<Vec<CircleValue>>,
    pub gk: Vec<CircleValue>,
    pub extension_cocycle: Vec<CircleValue>,
    pub witness: Vec<CircleValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma56Witnesses {
    pub kappa_raw: Vec<Vec<CircleValue>>,
    pub kappa_normalized: Vec<Vec<CircleValue>>,
    pub gk: Vec<CircleValue>,
    pub theta_prime: Vec<CircleValue>,
    pub z: Vec<CircleValue>,
    pub theta: Vec<CircleValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Prop53Witnesses {
    pub reference_basepoint: usize,
    pub reference_kappa: Vec<Vec<CircleValue>>,
    pub reference_gk: Vec<CircleValue>,
    pub comparisons: Vec<Prop53Comparison>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Prop53Comparison {
    pub basepoint: usize,
    /// 0-cochain u with the compared representative α′ = α + du (empty
    /// when α′ = α).
    pub alpha_shift: Vec<CircleValue>,
    pub kappa_normalized: Vec<Vec<CircleValue>>,
    pub gk: Vec<CircleValue>,
    pub witness: Vec<CircleValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma32Witnesses {
    pub extension: String,
    pub extension_cocycle: Vec<CircleValue>,
    pub d2_cocycle: Vec<CircleValue>,
    pub witness: Vec<CircleValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma44Witnesses {
    pub extension: String,
    pub phi_multiplier: String,
    pub route_a: Vec<String>,
    pub fiber_cocycle: Vec<String>,
    pub extension_cochain: Vec<String>,
    pub w: Vec<String>,
    pub witness: Vec<String>,
}

pub fn ints_out(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn ints_in(v: &[String]) -> Result<Vec<Int>, RecheckError> {
    v.iter()
        .map(|s| {
            s.parse::<Int>()
                .map_err(|_| RecheckError::WitnessInvalid(format!("bad integer {s:?}")))
        })
        .collect()
}

pub fn inputs_digest(inputs: &CertificateInputs) -> String {
    let canonical = serde_json::to_string(inputs).expect("inputs serialize");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{:x}", hasher.finalize())
}

impl Certificate {
    pub fn new(claim: &str, inputs: CertificateInputs, witnesses: Witnesses) -> Self {
        let digest = inputs_digest(&inputs);
        Certificate {
            schema: CERTIFICATE_SCHEMA,
            claim: claim.to_string(),
            inputs,
            inputs_digest: digest,
            verdict: "PASS".to_string(),
            witnesses,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RecheckError> {
        let cert: Certificate = serde_json::from_str(text)?;
        if cert.schema != CERTIFICATE_SCHEMA {
            return Err(RecheckError::BadSchema(cert.schema));
        }
        Ok(cert)
    }
}

pub fn thm13_witnesses(cert: &Thm13Certificate) -> Thm13Witnesses {
    Thm13Witnesses {
        kappa_raw: cert.kappa.raw.iter().map(|k| k.values.clone()).collect(),
        kappa_normalized: cert
            .kappa
            .normalized
            .iter()
            .map(|k| k.values.clone())
            .collect(),
        gk: cert.gk.values.clone(),
        theta_prime: cert.theta.theta_prime.values.clone(),
        z: cert.theta.z.clone(),
        theta: cert.theta.theta.values.clone(),
        extension_cocycle: cert.thm57.extension_cocycle.values.clone(),
        thm57_witness: cert.thm57.witness.values.clone(),
        bockstein: ints_out(&cert.bockstein.values),
        b1: cert
            .transgression
            .b1
            .iter()
            .map(|c| ints_out(&c.values))
            .collect(),
        b2: cert
            .transgression
            .b2
            .iter()
            .map(|c| ints_out(&c.values))
            .collect(),
        w: ints_out(&cert.transgression.w.values),
        delta_gk: ints_out(&cert.delta_gk.values),
        final_witness: ints_out(&cert.final_witness.values),
    }
}

pub fn thm57_witnesses(cert: &Thm57Certificate, kappa: &crate::gk::KappaTable) -> Thm57Witnesses {
    Thm57Witnesses {
        kappa_raw: kappa.raw.iter().map(|k| k.values.clone()).collect(),
        kappa_normalized: kappa.normalized.iter().map(|k| k.values.clone()).collect(),
        gk: cert.gk.values.clone(),
        extension_cocycle: cert.extension_cocycle.values.clone(),
        witness: cert.witness.values.clone(),
    }
}

pub fn prop53_witnesses(
    cert: &Prop53Certificate,
    shifts: &BTreeMap<String, Vec<CircleValue>>,
) -> Prop53Witnesses {
    Prop53Witnesses {
        reference_basepoint: cert.reference_basepoint,
        reference_kappa: cert
            .reference_kappa
            .iter()
            .map(|k| k.values.clone())
            .collect(),
        reference_gk: cert.reference.values.clone(),
        comparisons: cert
            .comparisons
            .iter()
            .map(|cmp| Prop53Comparison {
                basepoint: cmp.basepoint,
                alpha_shift: shifts.get(&cmp.alpha_label).cloned().unwrap_or_default(),
                kappa_normalized: cmp
                    .kappa_normalized
                    .iter()
                    .map(|k| k.values.clone())
                    .collect(),
                gk: cmp.gk.values.clone(),
                witness: cmp.witness.values.clone(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------
// re-checking
// ---------------------------------------------------------------------

struct FixtureContext {
    fixture: Fixture,
    action_name: String,
}

fn rebuild_inputs(inputs: &CertificateInputs) -> Result<FixtureContext, RecheckError> {
    match inputs {
        CertificateInputs::Fixture {
            fixture,
            action,
            subdivide,
        } => {
            let mut built = fixture
                .build()
                .map_err(|e| RecheckError::BadInputs(e.to_string()))?;
            for _ in 0..*subdivide {
                built = subdivide_fixture(&built)
                    .map_err(|e| RecheckError::BadInputs(e.to_string()))?;
            }
            if !built.actions.contains_key(action) {
                return Err(RecheckError::BadInputs(format!(
                    "no action named {action:?}"
                )));
            }
            Ok(FixtureContext {
                fixture: built,
                action_name: action.clone(),
            })
        }
        CertificateInputs::Corpus { .. } => Err(RecheckError::BadInputs(
            "corpus inputs have no fixture".into(),
        )),
    }
}

fn fail(eq: impl Into<String>) -> RecheckError {
    RecheckError::WitnessInvalid(eq.into())
}

/// Confirms a certificate from its stored witnesses alone. Re-evaluates
/// every claimed equation (coboundary witnesses, κ equations, θ
/// equations, transgression chains) by direct evaluation; no linear
/// systems are solved.
pub fn recheck(cert: &Certificate) -> Result<(), RecheckError> {
    let computed = inputs_digest(&cert.inputs);
    if computed != cert.inputs_digest {
        return Err(RecheckError::DigestMismatch {
            stored: cert.inputs_digest.clone(),
            computed,
        });
    }
    if cert.verdict != "PASS" {
        return Err(RecheckError::NotAPass(cert.verdict.clone()));
    }
    match &cert.witnesses {
        Witnesses::Thm13(w) => recheck_thm13(&cert.inputs, w),
        Witnesses::Thm57(w) => recheck_thm57(&cert.inputs, w),
        Witnesses::Lemma56(w) => recheck_lemma56(&cert.inputs, w),
        Witnesses::Prop53(w) => recheck_prop53(&cert.inputs, w),
        Witnesses::Lemma32 { entries } => recheck_lemma32(&cert.inputs, entries),
        Witnesses::Lemma44 { entries } => recheck_lemma44(&cert.inputs, entries),
    }
}

fn cochain_from(
    complex: &SimplicialComplex,
    degree: usize,
    values: &[CircleValue],
) -> Result<Cochain<CircleValue>, RecheckError> {
    if values.len() != complex.num_simplices(degree) {
        return Err(fail(format!("cochain length mismatch in degree {degree}")));
    }
    Ok(Cochain {
        degree,
        values: values.to_vec(),
    })
}

type KappaPair = (Vec<Cochain<CircleValue>>, Vec<Cochain<CircleValue>>);

fn check_kappa_tables(
    complex: &SimplicialComplex,
    action: &FiniteGroupAction,
    alpha: &Cochain<CircleValue>,
    basepoint: usize,
    raw: &[Vec<CircleValue>],
    normalized: &[Vec<CircleValue>],
) -> Result<KappaPair, RecheckError> {
    let n = action.order();
    if raw.len() != n || normalized.len() != n {
        return Err(fail("κ table has wrong length"));
    }
    let mut raw_out = Vec::with_capacity(n);
    let mut norm_out = Vec::with_capacity(n);
    for g in 0..n {
        let rhs = complex.pullback(action.auto(g), alpha).sub(alpha);
        let kr = cochain_from(complex, 0, &raw[g])?;
        let kn = cochain_from(complex, 0, &normalized[g])?;
        if complex.coboundary(&kr) != rhs {
            return Err(fail(format!("dκ_raw[{g}] ≠ g*α − α")));
        }
        if complex.coboundary(&kn) != rhs {
            return Err(fail(format!("dκ[{g}] ≠ g*α − α")));
        }
        if !kn.values[basepoint].is_zero() {
            return Err(fail(format!("κ[{g}] not normalized at the basepoint")));
        }
        raw_out.push(kr);
        norm_out.push(kn);
    }
    Ok((raw_out, norm_out))
}

fn check_gk(
    action: &FiniteGroupAction,
    kappas: &[Cochain<CircleValue>],
    basepoint: usize,
    gk: &[CircleValue],
) -> Result<BarCochain<CircleValue>, RecheckError> {
    let n = action.order();
    if gk.len() != n * n {
        return Err(fail("𝔊 has wrong length"));
    }
    for g in 0..n {
        for h in 0..n {
            let hx = action.auto(h).apply(basepoint);
            let expected = &kappas[g].values[hx] - &kappas[g].values[basepoint];
            if gk[g * n + h] != expected {
                return Err(fail(format!("𝔊({g},{h}) ≠ κ_g(hx) − κ_g(x)")));
            }
        }
    }
    let out = BarCochain {
        degree: 2,
        values: gk.to_vec(),
    };
    let module = TrivialModule::<CircleValue>::new();
    let d = bar_coboundary(&action.group, &module, &out);
    if !crate::groupcoh::bar_is_zero(&module, &d) {
        return Err(fail("𝔊 is not a group cocycle"));
    }
    Ok(out)
}

struct BundleData {
    bundle: FlatBundle,
    ext: BundleExtension,
}

fn rebuild_bundle(
    fixture: &Fixture,
    action: &FiniteGroupAction,
    raw_kappas: &[Cochain<CircleValue>],
) -> Result<BundleData, RecheckError> {
    let bundle = build_flat_bundle(&fixture.complex, &fixture.alpha_rho)
        .map_err(|e| fail(format!("bundle rebuild: {e}")))?;
    let ext = build_extension(&bundle, action, raw_kappas)
        .map_err(|e| fail(format!("extension rebuild: {e}")))?;
    Ok(BundleData { bundle, ext })
}

fn check_theta(
    data: &BundleData,
    fixture: &Fixture,
    theta_prime: &[CircleValue],
    z: &[CircleValue],
    theta: &[CircleValue],
) -> Result<crate::flatbundle::ThetaData, RecheckError> {
    let bundle = &data.bundle;
    let total = &bundle.total;
    let y = bundle.vertex(fixture.basepoint, 0);
    let tp = cochain_from(total, 0, theta_prime)?;
    let th = cochain_from(total, 0, theta)?;
    if z.len() != bundle.fiber_order {
        return Err(fail("z has wrong length"));
    }
    let pulled = total.pullback_along(&bundle.projection, &bundle.base, &bundle.alpha);
    if total.coboundary(&tp) != pulled {
        return Err(fail("dθ′ ≠ p*α"));
    }
    if total.coboundary(&th) != pulled {
        return Err(fail("dθ ≠ p*α"));
    }
    for (u, zu) in z.iter().enumerate() {
        let yu = bundle.translations[u].apply(y);
        let expected = &(&tp.values[y] - &tp.values[yu]) + &bundle.fiber_value(u);
        if zu != &expected {
            return Err(fail(format!("z({u}) ≠ θ′(y) − θ′(y·u) + u")));
        }
    }
    let out = crate::flatbundle::ThetaData {
        basepoint: y,
        theta_prime: tp,
        z: z.to_vec(),
        theta: th,
    };
    // τ restricted to the fiber translations is the identity
    for u in 0..bundle.fiber_order {
        if tau(&out, &bundle.translations[u]) != bundle.fiber_value(u) {
            return Err(fail(format!("τ(t_{u}) ≠ {u}-th fiber value")));
        }
    }
    Ok(out)
}

fn check_lemma56_pairs(
    data: &BundleData,
    theta: &crate::flatbundle::ThetaData,
    gk: &BarCochain<CircleValue>,
) -> Result<(), RecheckError> {
    let ext = &data.ext;
    let n = ext.group.order();
    let nq = ext.table.quotient.order();
    let taus: Vec<CircleValue> = (0..n)
        .map(|e| tau(theta, &ext.bundle_elements[e]))
        .collect();
    for i in 0..n {
        for j in 0..n {
            let dtau = &(&taus[j] - &taus[ext.group.mul(i, j)]) + &taus[i];
            let expected = &gk.values[ext.table.proj[i] * nq + ext.table.proj[j]];
            if &(-&dtau) != expected {
                return Err(fail(format!("−δτ ≠ π*𝔊 at ({i},{j})")));
            }
        }
    }
    Ok(())
}

fn check_extension_class(
    data: &BundleData,
    stored: &[CircleValue],
) -> Result<BarCochain<CircleValue>, RecheckError> {
    let class = data.ext.table.extension_class();
    if class.values.as_slice() != stored {
        return Err(fail(
            "stored extension cocycle differs from the rebuilt one",
        ));
    }
    Ok(class)
}

fn check_circle_coboundary(
    group: &FiniteGroup,
    witness: &[CircleValue],
    degree: usize,
    target: &BarCochain<CircleValue>,
) -> Result<(), RecheckError> {
    let n = group.order();
    if witness.len() != n.pow(degree as u32 - 1) {
        return Err(fail("witness has wrong length"));
    }
    let module = TrivialModule::<CircleValue>::new();
    let b = BarCochain {
        degree: degree - 1,
        values: witness.to_vec(),
    };
    if &bar_coboundary(group, &module, &b) != target {
        return Err(fail("coboundary witness does not reproduce the target"));
    }
    Ok(())
}

fn check_int_coboundary(
    group: &FiniteGroup,
    witness: &[Int],
    degree: usize,
    target: &BarCochain<Int>,
) -> Result<(), RecheckError> {
    let n = group.order();
    if witness.len() != n.pow(degree as u32 - 1) {
        return Err(fail("witness has wrong length"));
    }
    let module = TrivialModule::<Int>::new();
    let b = BarCochain {
        degree: degree - 1,
        values: witness.to_vec(),
    };
    if &bar_coboundary(group, &module, &b) != target {
        return Err(fail(
            "integer coboundary witness does not reproduce the target",
        ));
    }
    Ok(())
}

fn recheck_thm13(inputs: &CertificateInputs, w: &Thm13Witnesses) -> Result<(), RecheckError> {
    let ctx = rebuild_inputs(inputs)?;
    let fixture = &ctx.fixture;
    let complex = &fixture.complex;
    let action = &fixture.actions[&ctx.action_name];
    let alpha = &fixture.alpha_rho;
    let x = fixture.basepoint;
    let n = action.order();

    let (raw, norm) =
        check_kappa_tables(complex, action, alpha, x, &w.kappa_raw, &w.kappa_normalized)?;
    let gk = check_gk(action, &norm, x, &w.gk)?;
    let data = rebuild_bundle(fixture, action, &raw)?;
    let theta = check_theta(&data, fixture, &w.theta_prime, &w.z, &w.theta)?;
    check_lemma56_pairs(&data, &theta, &gk)?;
    let class = check_extension_class(&data, &w.extension_cocycle)?;

    // thm57 witness
    let module = TrivialModule::<CircleValue>::new();
    let diff = crate::groupcoh::bar_sub(&module, &class, &gk);
    check_circle_coboundary(&action.group, &w.thm57_witness, 2, &diff)?;

    // Bockstein cocycle
    let beta = complex
        .bockstein(alpha)
        .map_err(|e| fail(format!("bockstein: {e}")))?;
    if ints_out(&beta.values) != w.bockstein {
        return Err(fail("stored Bockstein cocycle differs"));
    }

    // transgression chain
    let b1 =
        w.b1.iter()
            .map(|v| {
                let values = ints_in(v)?;
                if values.len() != complex.num_simplices(1) {
                    return Err(fail("b1 entry has wrong length"));
                }
                Ok(Cochain { degree: 1, values })
            })
            .collect::<Result<Vec<_>, _>>()?;
    let b2 =
        w.b2.iter()
            .map(|v| {
                let values = ints_in(v)?;
                if values.len() != complex.num_simplices(0) {
                    return Err(fail("b2 entry has wrong length"));
                }
                Ok(Cochain { degree: 0, values })
            })
            .collect::<Result<Vec<_>, _>>()?;
    let w_values = ints_in(&w.w)?;
    if w_values.len() != n * n * n {
        return Err(fail("w has wrong length"));
    }
    let wit = crate::bicomplex::TransgressionWitness {
        z: beta,
        b1,
        b2,
        w: BarCochain {
            degree: 3,
            values: w_values,
        },
    };
    if !crate::bicomplex::recheck_transgression(complex, action, &wit) {
        return Err(fail("transgression zig-zag equations fail"));
    }

    // δ𝔊 and the final class equality
    let delta_gk = crate::groupcoh::connecting_delta(&action.group, &gk)
        .map_err(|e| fail(format!("δ𝔊: {e}")))?;
    if ints_out(&delta_gk.values) != w.delta_gk {
        return Err(fail("stored δ𝔊 differs"));
    }
    let int_module = TrivialModule::<Int>::new();
    let sum = crate::groupcoh::bar_add(&int_module, &delta_gk, &wit.w);
    check_int_coboundary(&action.group, &ints_in(&w.final_witness)?, 3, &sum)?;
    Ok(())
}

fn recheck_thm57(inputs: &CertificateInputs, w: &Thm57Witnesses) -> Result<(), RecheckError> {
    let ctx = rebuild_inputs(inputs)?;
    let fixture = &ctx.fixture;
    let action = &fixture.actions[&ctx.action_name];
    let x = fixture.basepoint;
    let (raw, norm) = check_kappa_tables(
        &fixture.complex,
        action,
        &fixture.alpha_rho,
        x,
        &w.kappa_raw,
        &w.kappa_normalized,
    )?;
    let gk = check_gk(action, &norm, x, &w.gk)?;
    let data = rebuild_bundle(fixture, action, &raw)?;
    let class = check_extension_class(&data, &w.extension_cocycle)?;
    let module = TrivialModule::<CircleValue>::new();
    let diff = crate::groupcoh::bar_sub(&module, &class, &gk);
    check_circle_coboundary(&action.group, &w.witness, 2, &diff)
}

fn recheck_lemma56(inputs: &CertificateInputs, w: &Lemma56Witnesses) -> Result<(), RecheckError> {
    let ctx = rebuild_inputs(inputs)?;
    let fixture = &ctx.fixture;
    let action = &fixture.actions[&ctx.action_name];
    let x = fixture.basepoint;
    let (raw, norm) = check_kappa_tables(
        &fixture.complex,
        action,
        &fixture.alpha_rho,
        x,
        &w.kappa_raw,
        &w.kappa_normalized,
    )?;
    let gk = check_gk(action, &norm, x, &w.gk)?;
    let data = rebuild_bundle(fixture, action, &raw)?;
    let theta = check_theta(&data, fixture, &w.theta_prime, &w.z, &w.theta)?;
    check_lemma56_pairs(&data, &theta, &gk)
}

fn recheck_prop53(inputs: &CertificateInputs, w: &Prop53Witnesses) -> Result<(), RecheckError> {
    let ctx = rebuild_inputs(inputs)?;
    let fixture = &ctx.fixture;
    let complex = &fixture.complex;
    let action = &fixture.actions[&ctx.action_name];
    let alpha = &fixture.alpha_rho;

    let ref_kappas = w
        .reference_kappa
        .iter()
        .map(|k| cochain_from(complex, 0, k))
        .collect::<Result<Vec<_>, _>>()?;
    for (g, k) in ref_kappas.iter().enumerate() {
        let rhs = complex.pullback(action.auto(g), alpha).sub(alpha);
        if complex.coboundary(k) != rhs {
            return Err(fail(format!("reference dκ[{g}] ≠ g*α − α")));
        }
    }
    let reference = check_gk(action, &ref_kappas, w.reference_basepoint, &w.reference_gk)?;

    let module = TrivialModule::<CircleValue>::new();
    for (i, cmp) in w.comparisons.iter().enumerate() {
        let alpha_cmp = if cmp.alpha_shift.is_empty() {
            alpha.clone()
        } else {
            let u = cochain_from(complex, 0, &cmp.alpha_shift)?;
            alpha.add(&complex.coboundary(&u))
        };
        let kappas = cmp
            .kappa_normalized
            .iter()
            .map(|k| cochain_from(complex, 0, k))
            .collect::<Result<Vec<_>, _>>()?;
        if kappas.len() != action.order() {
            return Err(fail(format!("comparison {i}: κ table length")));
        }
        for (g, k) in kappas.iter().enumerate() {
            let rhs = complex.pullback(action.auto(g), &alpha_cmp).sub(&alpha_cmp);
            if complex.coboundary(k) != rhs {
                return Err(fail(format!("comparison {i}: dκ[{g}] ≠ g*α′ − α′")));
            }
        }
        let gk = check_gk(action, &kappas, cmp.basepoint, &cmp.gk)?;
        let diff = crate::groupcoh::bar_sub(&module, &gk, &reference);
        check_circle_coboundary(&action.group, &cmp.witness, 2, &diff)
            .map_err(|e| fail(format!("comparison {i}: {e}")))?;
    }
    Ok(())
}

fn corpus_extensions(
    inputs: &CertificateInputs,
) -> Result<Vec<(String, ExtensionTable)>, RecheckError> {
    match inputs {
        CertificateInputs::Corpus { corpus, extension } => corpus
            .extensions
            .iter()
            .filter(|spec| extension.as_ref().is_none_or(|name| &spec.name == name))
            .map(|spec| {
                spec.build()
                    .map(|e| (spec.name.clone(), e))
                    .map_err(RecheckError::BadInputs)
            })
            .collect(),
        CertificateInputs::Fixture { .. } => Err(RecheckError::BadInputs(
            "fixture inputs have no corpus".into(),
        )),
    }
}

fn recheck_lemma32(
    inputs: &CertificateInputs,
    all: &[Lemma32Witnesses],
) -> Result<(), RecheckError> {
    let exts = corpus_extensions(inputs)?;
    if exts.len() != all.len() {
        return Err(fail("witness count does not match the corpus"));
    }
    for ((name, ext), w) in exts.iter().zip(all) {
        if name != &w.extension {
            return Err(fail(format!("extension order mismatch at {name}")));
        }
        let class = ext.extension_class();
        if class.values.as_slice() != w.extension_cocycle.as_slice() {
            return Err(fail(format!("{name}: stored extension cocycle differs")));
        }
        // d2 is deterministic given the alternate-section convention
        let d2 = match ext.alternate_section() {
            Some(s2) => {
                let alt = ExtensionTable::new(ext.total.clone(), ext.kernel.clone(), Some(s2))
                    .map_err(|e| fail(format!("{name}: {e}")))?;
                crate::bicomplex::hs_d2_01(&alt, &Int::from(1))
            }
            None => crate::bicomplex::hs_d2_01(ext, &Int::from(1)),
        }
        .map_err(|e| fail(format!("{name}: {e}")))?;
        if d2.values.as_slice() != w.d2_cocycle.as_slice() {
            return Err(fail(format!("{name}: stored d₂ cocycle differs")));
        }
        let module = TrivialModule::<CircleValue>::new();
        let sum = crate::groupcoh::bar_add(&module, &class, &d2);
        let conj = ext.conjugation_module();
        let witness = BarCochain {
            degree: 1,
            values: w.witness.clone(),
        };
        if bar_coboundary_mult(&ext.quotient, &conj, &witness) != sum {
            return Err(fail(format!("{name}: lemma32 witness fails")));
        }
    }
    Ok(())
}

fn bar_coboundary_mult(
    group: &FiniteGroup,
    module: &CircleMultModule,
    c: &BarCochain<CircleValue>,
) -> BarCochain<CircleValue> {
    bar_coboundary(group, module, c)
}

fn recheck_lemma44(
    inputs: &CertificateInputs,
    all: &[Lemma44Witnesses],
) -> Result<(), RecheckError> {
    let exts = corpus_extensions(inputs)?;
    if exts.len() != all.len() {
        return Err(fail("witness count does not match the corpus"));
    }
    for ((name, ext), w) in exts.iter().zip(all) {
        if name != &w.extension {
            return Err(fail(format!("extension order mismatch at {name}")));
        }
        let k: Int = w
            .phi_multiplier
            .parse()
            .map_err(|_| fail(format!("{name}: bad multiplier")))?;
        // route A is a deterministic construction
        let d2 = crate::bicomplex::hs_d2_01(ext, &k).map_err(|e| fail(format!("{name}: {e}")))?;
        let route_a = crate::groupcoh::connecting_delta(&ext.quotient, &d2)
            .map_err(|e| fail(format!("{name}: {e}")))?;
        if ints_out(&route_a.values) != w.route_a {
            return Err(fail(format!("{name}: stored route-A cocycle differs")));
        }
        // fiber cocycle must be δ(lift∘φ) on the kernel
        let kernel_group = ext.kernel_group();
        let phi = BarCochain {
            degree: 1,
            values: ext.kernel_circle.iter().map(|v| v.scale(&k)).collect(),
        };
        let z = crate::groupcoh::connecting_delta(&kernel_group, &phi)
            .map_err(|e| fail(format!("{name}: {e}")))?;
        if ints_out(&z.values) != w.fiber_cocycle {
            return Err(fail(format!("{name}: stored fiber cocycle differs")));
        }
        let trans = crate::bicomplex::ExtensionTransgression {
            fiber_cocycle: z,
            extension_cochain: BarCochain {
                degree: 2,
                values: ints_in(&w.extension_cochain)?,
            },
            w: BarCochain {
                degree: 3,
                values: ints_in(&w.w)?,
            },
        };
        if !crate::bicomplex::recheck_extension_transgression(ext, &trans) {
            return Err(fail(format!(
                "{name}: extension transgression equations fail"
            )));
        }
        let module = TrivialModule::<Int>::new();
        let sum = crate::groupcoh::bar_add(&module, &route_a, &trans.w);
        check_int_coboundary(&ext.quotient, &ints_in(&w.witness)?, 3, &sum)
            .map_err(|e| fail(format!("{name}: {e}")))?;
    }
    Ok(())
}
