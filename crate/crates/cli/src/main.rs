//! Command-line driver: fixture loading and validation, cohomology
//! reports, theorem verification with JSON certificates, certificate
//! re-checking, and the built-in fixture library.
//!
//! Exit codes: 0 pass, 1 claim fails, 2 input invalid, 3 internal
//! obstruction.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use transgress_core::cert::{
    self, Certificate, CertificateInputs, Lemma32Witnesses, Lemma44Witnesses, Witnesses,
};
use transgress_core::exact::{CircleValue, Int};
use transgress_core::fixture_io::FixtureFile;
use transgress_core::gk;
use transgress_core::groupcoh::ExtensionCorpus;
use transgress_core::simplicial::fixtures::{self, subdivide_fixture, Fixture};
use transgress_core::simplicial::{Cochain, Ring};

#[derive(Parser)]
#[command(
    name = "transgress",
    about = "Exact verification of transgression and central-extension identities on finite fixtures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    #[value(alias = "Z")]
    Z,
    #[value(alias = "Q")]
    Q,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    Thm13,
    Thm57,
    Lemma56,
    Prop53,
    Lemma32,
    Lemma44,
}

#[derive(Subcommand)]
enum Command {
    /// Print a cohomology group of a fixture complex.
    Cohomology {
        fixture: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "z")]
        ring: RingArg,
    },
    /// Verify a theorem on a fixture (or an extension corpus) and emit a
    /// certificate with witnesses.
    Verify {
        input: PathBuf,
        #[arg(long)]
        action: Option<String>,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        /// Barycentrically subdivide the fixture this many times first.
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
        /// Restrict a corpus run to one named extension.
        #[arg(long)]
        extension: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate a certificate from its stored witnesses (no solving).
    Recheck { certificate: PathBuf },
    /// List or emit the built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        sub: FixturesCommand,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    List,
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_CLAIM_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_OBSTRUCTION: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BAD_INPUT,
            message: message.into(),
        }
    }

    fn claim(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CLAIM_FAILED,
            message: message.into(),
        }
    }

    fn obstruction(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_OBSTRUCTION,
            message: message.into(),
        }
    }
}

fn gk_failure(e: gk::GkError) -> Failure {
    use gk::GkError::*;
    match &e {
        CocycleIdentityFailed(..) | Lemma56Failed(..) | MissingWitness(_) => {
            Failure::claim(e.to_string())
        }
        _ => Failure::obstruction(e.to_string()),
    }
}

fn max_subdivisions() -> usize {
    std::env::var("TRANSGRESS_MAX_SUBDIVISIONS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cohomology {
            fixture,
            degree,
            ring,
        } => cmd_cohomology(&fixture, degree, ring),
        Command::Verify {
            input,
            action,
            theorem,
            subdivide,
            extension,
            out,
        } => cmd_verify(
            &input,
            action.as_deref(),
            theorem,
            subdivide,
            extension,
            out.as_deref(),
        ),
        Command::Recheck { certificate } => cmd_recheck(&certificate),
        Command::Fixtures { sub } => match sub {
            FixturesCommand::List => {
                for name in fixtures::FIXTURE_NAMES {
                    println!("{name}");
                }
                println!("extension_corpus");
                Ok(())
            }
            FixturesCommand::Emit { name, out } => cmd_emit(&name, out.as_deref()),
        },
    }
}

fn read_file(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_fixture(path: &std::path::Path) -> Result<(FixtureFile, Fixture), Failure> {
    let text = read_file(path)?;
    let file = FixtureFile::from_json(&text).map_err(|e| Failure::input(e.to_string()))?;
    let fixture = file.build().map_err(|e| Failure::input(e.to_string()))?;
    Ok((file, fixture))
}

fn cmd_cohomology(path: &std::path::Path, degree: usize, ring: RingArg) -> Result<(), Failure> {
    let (_, fixture) = load_fixture(path)?;
    let ring = match ring {
        RingArg::Z => Ring::Z,
        RingArg::Q => Ring::Q,
    };
    let t0 = Instant::now();
    let group = fixture.complex.cohomology(degree, ring);
    eprintln!("computed in {:?}", t0.elapsed());
    println!(
        "H^{degree}({}; {}) = {group}",
        fixture.name,
        match ring {
            Ring::Z => "ℤ",
            Ring::Q => "ℚ",
        }
    );
    Ok(())
}

fn cmd_verify(
    path: &std::path::Path,
    action: Option<&str>,
    theorem: TheoremArg,
    subdivide: usize,
    extension: Option<String>,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let t0 = Instant::now();
    let certificate = match theorem {
        TheoremArg::Lemma32 | TheoremArg::Lemma44 => {
            let text = read_file(path)?;
            let corpus: ExtensionCorpus =
                serde_json::from_str(&text).map_err(|e| Failure::input(format!("corpus: {e}")))?;
            verify_corpus(corpus, theorem, extension)?
        }
        _ => {
            let (file, fixture) = load_fixture(path)?;
            let action_name = action
                .ok_or_else(|| Failure::input("--action is required for fixture theorems"))?;
            if !fixture.actions.contains_key(action_name) {
                return Err(Failure::input(format!(
                    "no action named {action_name:?} (have {:?})",
                    fixture.actions.keys().collect::<Vec<_>>()
                )));
            }
            fixture
                .validate()
                .map_err(|e| Failure::input(e.to_string()))?;
            let mut working = fixture;
            for _ in 0..subdivide {
                working =
                    subdivide_fixture(&working).map_err(|e| Failure::obstruction(e.to_string()))?;
            }
            let inputs = CertificateInputs::Fixture {
                fixture: file,
                action: action_name.to_string(),
                subdivide,
            };
            verify_fixture(&working, action_name, theorem, inputs)?
        }
    };
    eprintln!("verified in {:?}", t0.elapsed());
    let json = certificate.to_json();
    match out {
        Some(out) => {
            std::fs::write(out, &json)
                .map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
            println!(
                "{} {} {}",
                certificate.claim, certificate.verdict, certificate.inputs_digest
            );
        }
        None => println!("{json}"),
    }
    Ok(())
}

fn verify_fixture(
    fixture: &Fixture,
    action_name: &str,
    theorem: TheoremArg,
    inputs: CertificateInputs,
) -> Result<Certificate, Failure> {
    let complex = &fixture.complex;
    let action = &fixture.actions[action_name];
    let alpha = &fixture.alpha_rho;
    let x = fixture.basepoint;
    match theorem {
        TheoremArg::Thm13 => {
            let cert = gk::thm13_verify(complex, action, alpha, x).map_err(gk_failure)?;
            Ok(Certificate::new(
                "thm13",
                inputs,
                Witnesses::Thm13(Box::new(cert::thm13_witnesses(&cert))),
            ))
        }
        TheoremArg::Thm57 => {
            let bundle = transgress_core::flatbundle::build_flat_bundle(complex, alpha)
                .map_err(|e| gk_failure(e.into()))?;
            let kappa = gk::kappa_table(complex, action, alpha, x, bundle.fiber_order)
                .map_err(gk_failure)?;
            let gkc = gk::gk_cocycle(action, &kappa.normalized, x).map_err(gk_failure)?;
            let ext = transgress_core::flatbundle::build_extension(&bundle, action, &kappa.raw)
                .map_err(|e| gk_failure(e.into()))?;
            let cert = gk::thm57_check(&ext, &gkc).map_err(gk_failure)?;
            Ok(Certificate::new(
                "thm57",
                inputs,
                Witnesses::Thm57(cert::thm57_witnesses(&cert, &kappa)),
            ))
        }
        TheoremArg::Lemma56 => {
            let bundle = transgress_core::flatbundle::build_flat_bundle(complex, alpha)
                .map_err(|e| gk_failure(e.into()))?;
            let kappa = gk::kappa_table(complex, action, alpha, x, bundle.fiber_order)
                .map_err(gk_failure)?;
            let gkc = gk::gk_cocycle(action, &kappa.normalized, x).map_err(gk_failure)?;
            let theta = transgress_core::flatbundle::build_theta(&bundle, bundle.vertex(x, 0))
                .map_err(|e| gk_failure(e.into()))?;
            let ext = transgress_core::flatbundle::build_extension(&bundle, action, &kappa.raw)
                .map_err(|e| gk_failure(e.into()))?;
            gk::lemma56_check(&bundle, &ext, &theta, &gkc).map_err(gk_failure)?;
            Ok(Certificate::new(
                "lemma56",
                inputs,
                Witnesses::Lemma56(cert::Lemma56Witnesses {
                    kappa_raw: kappa.raw.iter().map(|k| k.values.clone()).collect(),
                    kappa_normalized: kappa.normalized.iter().map(|k| k.values.clone()).collect(),
                    gk: gkc.values.clone(),
                    theta_prime: theta.theta_prime.values.clone(),
                    z: theta.z.clone(),
                    theta: theta.theta.values.clone(),
                }),
            ))
        }
        TheoremArg::Prop53 => {
            let (alphas, shifts) = prop53_variants(fixture);
            let basepoints = prop53_basepoints(fixture);
            let cert =
                gk::prop53_checks(complex, action, &alphas, &basepoints).map_err(gk_failure)?;
            Ok(Certificate::new(
                "prop53",
                inputs,
                Witnesses::Prop53(cert::prop53_witnesses(&cert, &shifts)),
            ))
        }
        TheoremArg::Lemma32 | TheoremArg::Lemma44 => {
            unreachable!("corpus theorems handled separately")
        }
    }
}

/// Deterministic basepoint sample: the fixture basepoint plus the next
/// two vertices.
fn prop53_basepoints(fixture: &Fixture) -> Vec<usize> {
    let n = fixture.complex.n_vertices();
    (0..3).map(|k| (fixture.basepoint + k) % n).collect()
}

/// Deterministic α-representatives: the shipped cocycle and one shifted
/// by the coboundary of a fiber-valued 0-cochain.
type AlphaVariants = (
    Vec<(String, Cochain<CircleValue>)>,
    BTreeMap<String, Vec<CircleValue>>,
);

fn prop53_variants(fixture: &Fixture) -> AlphaVariants {
    let m = transgress_core::flatbundle::fiber_subgroup_order(&fixture.alpha_rho) as i64;
    let u = Cochain {
        degree: 0,
        values: (0..fixture.complex.n_vertices())
            .map(|v| CircleValue::from_frac((3 * v as i64 + 1) % m, m))
            .collect(),
    };
    let shifted = fixture.alpha_rho.add(&fixture.complex.coboundary(&u));
    let mut shifts = BTreeMap::new();
    shifts.insert("alpha".to_string(), Vec::new());
    shifts.insert("alpha_shifted".to_string(), u.values.clone());
    (
        vec![
            ("alpha".to_string(), fixture.alpha_rho.clone()),
            ("alpha_shifted".to_string(), shifted),
        ],
        shifts,
    )
}

fn verify_corpus(
    corpus: ExtensionCorpus,
    theorem: TheoremArg,
    extension: Option<String>,
) -> Result<Certificate, Failure> {
    let selected: Vec<_> = corpus
        .extensions
        .iter()
        .filter(|spec| extension.as_ref().is_none_or(|name| &spec.name == name))
        .cloned()
        .collect();
    if selected.is_empty() {
        return Err(Failure::input("no matching extension in the corpus"));
    }
    let inputs = CertificateInputs::Corpus {
        corpus: ExtensionCorpus {
            schema: corpus.schema,
            extensions: selected.clone(),
        },
        extension: extension.clone(),
    };
    match theorem {
        TheoremArg::Lemma32 => {
            let mut entries = Vec::new();
            for spec in &selected {
                let ext = spec.build().map_err(Failure::input)?;
                let c = transgress_core::bicomplex::lemma32_check(&ext)
                    .map_err(|e| Failure::claim(format!("{}: {e}", spec.name)))?;
                entries.push(Lemma32Witnesses {
                    extension: spec.name.clone(),
                    extension_cocycle: c.extension_cocycle.values,
                    d2_cocycle: c.d2_cocycle.values,
                    witness: c.witness.values,
                });
            }
            Ok(Certificate::new(
                "lemma32",
                inputs,
                Witnesses::Lemma32 { entries },
            ))
        }
        TheoremArg::Lemma44 => {
            let mut entries = Vec::new();
            for spec in &selected {
                let ext = spec.build().map_err(Failure::input)?;
                let c = transgress_core::bicomplex::lemma44_check(&ext, &Int::from(1))
                    .map_err(|e| Failure::claim(format!("{}: {e}", spec.name)))?;
                entries.push(Lemma44Witnesses {
                    extension: spec.name.clone(),
                    phi_multiplier: "1".to_string(),
                    route_a: cert::ints_out(&c.route_a.values),
                    fiber_cocycle: cert::ints_out(&c.route_b.fiber_cocycle.values),
                    extension_cochain: cert::ints_out(&c.route_b.extension_cochain.values),
                    w: cert::ints_out(&c.route_b.w.values),
                    witness: cert::ints_out(&c.witness.values),
                });
            }
            Ok(Certificate::new(
                "lemma44",
                inputs,
                Witnesses::Lemma44 { entries },
            ))
        }
        _ => unreachable!(),
    }
}

fn cmd_recheck(path: &std::path::Path) -> Result<(), Failure> {
    let text = read_file(path)?;
    let certificate = Certificate::from_json(&text).map_err(|e| Failure::input(e.to_string()))?;
    match cert::recheck(&certificate) {
        Ok(()) => {
            println!("{} PASS {}", certificate.claim, certificate.inputs_digest);
            Ok(())
        }
        Err(e) => Err(Failure::claim(format!("recheck FAIL: {e}"))),
    }
}

fn cmd_emit(name: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let json = if name == "extension_corpus" {
        serde_json::to_string_pretty(&transgress_core::groupcoh::builtin_corpus())
            .expect("corpus serializes")
    } else {
        let fixture = fixtures::by_name(name, max_subdivisions()).map_err(|e| match e {
            fixtures::FixtureError::SubdivisionBudgetExceeded(_) => {
                Failure::obstruction(e.to_string())
            }
            fixtures::FixtureError::Quotient(_) => Failure::obstruction(e.to_string()),
            other => Failure::input(other.to_string()),
        })?;
        FixtureFile::from_fixture(&fixture).to_json()
    };
    match out {
        Some(path) => std::fs::write(path, &json)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(())
}
