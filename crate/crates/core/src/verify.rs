//! Verification suites shared by the command-line tool and the test targets.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jordan::{JordanElement, OctMatrix3, DIM};
use crate::linalg::Inertia;
use crate::octonion::{associator, oct_mul, MultiplicationTable, Octonion, Unit};
use crate::report::{Check, Report};
use crate::scalars::{rat, Rational};
use crate::structure::{
    dependency_identities, is_rotation, staged_rank, Algebra, JacobiMode, TableFormat, RANK,
};
use crate::subalgebras::{verify_all, verify_stabilizers, Registry};
use crate::tangent::check_kappa;
use crate::transforms::{
    build_generator, compose, distance, type_permutation, type_permutation_products, GeneratorName, Kind,
};

/// Knobs for the float checks and the randomized Jacobi test.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub jacobi: JacobiMode,
}

impl Default for Config {
    fn default() -> Self {
        Self { tol: 1e-10, samples: 20, seed: 26, jacobi: JacobiMode::Random(100_000) }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.samples == 0 {
            return Err(Error::Parse("samples must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Octonion,
    Group,
    Structure,
    Chains,
    Stabilizers,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Octonion, Suite::Group, Suite::Structure, Suite::Chains, Suite::Stabilizers, Suite::All];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "octonion" => Self::Octonion,
            "group" => Self::Group,
            "structure" => Self::Structure,
            "chains" => Self::Chains,
            "stabilizers" => Self::Stabilizers,
            "all" => Self::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Octonion => "octonion",
            Self::Group => "group",
            Self::Structure => "structure",
            Self::Chains => "chains",
            Self::Stabilizers => "stabilizers",
            Self::All => "all",
        })
    }
}

/// Runs suites, building the algebra and the subalgebra registry at most
/// once.
pub struct Verifier {
    pub cfg: Config,
    alg: OnceLock<Algebra>,
    reg: OnceLock<Registry>,
}

impl Verifier {
    pub fn new(cfg: Config) -> Self {
        Self { cfg, alg: OnceLock::new(), reg: OnceLock::new() }
    }

    pub fn algebra(&self) -> Result<&Algebra> {
        if let Some(a) = self.alg.get() {
            return Ok(a);
        }
        let built = Algebra::build()?;
        Ok(self.alg.get_or_init(|| built))
    }

    pub fn registry(&self) -> Result<&Registry> {
        if let Some(r) = self.reg.get() {
            return Ok(r);
        }
        let built = Registry::build(self.algebra()?)?;
        Ok(self.reg.get_or_init(|| built))
    }

    pub fn run(&self, suite: Suite) -> Result<Vec<Report>> {
        self.cfg.validate()?;
        Ok(match suite {
            Suite::Octonion => vec![octonion_suite(&self.cfg)],
            Suite::Group => group_suite(&self.cfg),
            Suite::Structure => structure_suite(self.algebra()?, &self.cfg)?,
            Suite::Chains => verify_all(self.algebra()?, self.registry()?),
            Suite::Stabilizers => verify_stabilizers(self.algebra()?, self.registry()?),
            Suite::All => {
                let mut out = Vec::new();
                for s in &Suite::ALL[..5] {
                    out.extend(self.run(*s)?);
                }
                out
            }
        })
    }
}

pub fn random_jordan_f64(rng: &mut impl Rng) -> JordanElement<f64> {
    let v: Vec<f64> = (0..DIM).map(|_| rng.gen_range(-1.0..1.0)).collect();
    JordanElement::from_coords(&v)
}

/// Small random rationals `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 5`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn random_jordan_q(rng: &mut impl Rng) -> JordanElement<Rational> {
    let v: Vec<Rational> = (0..DIM).map(|_| random_rational(rng)).collect();
    JordanElement::from_coords(&v)
}

pub fn random_octonion_q(rng: &mut impl Rng) -> Octonion<Rational> {
    Octonion::new(std::array::from_fn(|_| random_rational(rng)))
}

pub fn octonion_suite(cfg: &Config) -> Report {
    let mut report = Report::new("octonion");
    report.push(Check::from_result("table derived consistently from quaternionic pairs", MultiplicationTable::derive()));
    let table = MultiplicationTable::global();
    let squares = Unit::ALL.iter().all(|u| table.product(u.index(), u.index()) == (-1, 0));
    report.push(Check::from_bool("imaginary units square to -1", squares, ""));
    let anti = Unit::ALL.iter().all(|p| {
        Unit::ALL.iter().filter(|q| q != &p).all(|q| {
            let (s1, r1) = table.product(p.index(), q.index());
            let (s2, r2) = table.product(q.index(), p.index());
            r1 == r2 && s1 == -s2
        })
    });
    report.push(Check::from_bool("distinct imaginary units anticommute", anti, ""));
    let pairs = Unit::ALL.iter().all(|r| {
        r.quaternionic_pairs().iter().all(|(p, q)| oct_mul(&Octonion::<Rational>::unit(*p), &Octonion::unit(*q)) == Octonion::unit(*r))
    });
    report.push(Check::from_bool("quaternionic pairs multiply to their unit", pairs, ""));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut composition = true;
    let mut alternative = true;
    for _ in 0..cfg.samples {
        let (a, b) = (random_octonion_q(&mut rng), random_octonion_q(&mut rng));
        composition &= oct_mul(&a, &b).norm2() == a.norm2() * b.norm2();
        alternative &= associator(&a, &a, &b).c.iter().all(Zero::is_zero)
            && associator(&a, &b, &b).c.iter().all(Zero::is_zero);
    }
    report.push(Check::from_bool("composition |ab|² = |a|²|b|² (exact)", composition, ""));
    report.push(Check::from_bool("alternativity (exact)", alternative, ""));
    let (i, j, l) = (Octonion::<Rational>::unit(Unit::I), Octonion::unit(Unit::J), Octonion::unit(Unit::L));
    let nonassoc = associator(&i, &j, &l).c.iter().any(|c| !c.is_zero());
    report.push(Check::from_bool("(ij)ℓ ≠ i(jℓ)", nonassoc, ""));
    report
}

/// Finite-angle checks: conservation laws, association order, the `𝒯`
/// product identities and the group-level dependencies.
pub fn group_suite(cfg: &Config) -> Vec<Report> {
    vec![
        conservation_report(cfg),
        type_independence_report(cfg),
        type_permutation_report(cfg),
        group_dependency_report(cfg),
    ]
}

fn angles_and_points(cfg: &Config, salt: u64) -> Vec<(f64, JordanElement<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ salt);
    (0..cfg.samples).map(|_| (rng.gen_range(-1.5..1.5), random_jordan_f64(&mut rng))).collect()
}

pub fn conservation_report(cfg: &Config) -> Report {
    let points = angles_and_points(cfg, 0x11);
    let mut results: Vec<(usize, GeneratorName, f64, f64, bool)> = GeneratorName::all_shapes()
        .into_par_iter()
        .enumerate()
        .map(|(n, name)| {
            let action = build_generator(name);
            let (mut det_err, mut trace_err, mut assoc) = (0f64, 0f64, true);
            for (alpha, x) in &points {
                match action.apply_checked(alpha, x, cfg.tol) {
                    Ok(y) => {
                        det_err = det_err.max((y.det() - x.det()).abs());
                        trace_err = trace_err.max((y.trace() - x.trace()).abs());
                    }
                    Err(_) => assoc = false,
                }
            }
            (n, name, det_err, trace_err, assoc)
        })
        .collect();
    results.sort_by_key(|r| r.0);
    let mut report = Report::new("group conservation");
    let det_bad: Vec<String> =
        results.iter().filter(|r| !(r.2 < cfg.tol)).map(|r| format!("{} ({:e})", r.1, r.2)).collect();
    let trace_bad: Vec<String> = results
        .iter()
        .filter(|r| !r.1.is_boost() && !(r.3 < cfg.tol))
        .map(|r| format!("{} ({:e})", r.1, r.3))
        .collect();
    let assoc_bad: Vec<String> = results.iter().filter(|r| !r.4).map(|r| r.1.to_string()).collect();
    let n = results.len();
    report.push(Check::from_bool(format!("{n} generators preserve det"), det_bad.is_empty(), det_bad.join(", ")));
    report.push(Check::from_bool("rotations preserve trace", trace_bad.is_empty(), trace_bad.join(", ")));
    report.push(Check::from_bool(
        "(M X) M† = M (X M†) for every shape",
        assoc_bad.is_empty(),
        assoc_bad.join(", "),
    ));
    let identity_at_zero = GeneratorName::all_shapes()
        .into_iter()
        .all(|name| points.iter().all(|(_, x)| distance(&build_generator(name).apply(&0.0, x), x) == 0.0));
    report.push(Check::from_bool("identity at α = 0", identity_at_zero, ""));
    report
}

pub fn type_independence_report(cfg: &Config) -> Report {
    let points = angles_and_points(cfg, 0x22);
    let mut report = Report::new("type independence");
    for f in [Kind::A as fn(Unit) -> Kind, Kind::G] {
        for q in Unit::ALL {
            let kind = f(q);
            let worst = points
                .iter()
                .map(|(alpha, x)| {
                    let base = build_generator(GeneratorName::of(kind, 1)).apply(alpha, x);
                    (2..=3)
                        .map(|a| distance(&base, &build_generator(GeneratorName::of(kind, a)).apply(alpha, x)))
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            let label = GeneratorName::of(kind, 1).to_string().replace('1', "");
            report.push(Check::from_bool(
                format!("{label}: types 1, 2, 3 agree"),
                worst < cfg.tol,
                format!("max deviation {worst:e}"),
            ));
        }
    }
    report
}

pub fn type_permutation_report(cfg: &Config) -> Report {
    let mut report = Report::new("type permutation");
    let t = type_permutation::<Rational>();
    let t3 = t.mul(&t).mul(&t);
    report.push(Check::from_bool("𝒯³ = 𝓘 (exact)", t3 == OctMatrix3::identity(), ""));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x33);
    let mut det_ok = true;
    let mut literal_ok = true;
    for _ in 0..cfg.samples {
        let x = random_jordan_q(&mut rng);
        let tx = JordanElement::from_matrix(&t.mul(&x.to_matrix()).mul(&t.adjoint()));
        literal_ok &= tx == x.cycle();
        det_ok &= tx.det() == x.det();
    }
    report.push(Check::from_bool("𝒯 X 𝒯† is the cyclic shift (exact)", literal_ok, ""));
    report.push(Check::from_bool("𝒯 preserves det (exact)", det_ok, ""));

    let points = angles_and_points(cfg, 0x44);
    let labels = ["R1_xz(-π) R2_xz(-π)", "R2_xz(π) R1_xz(π) R2_xz(π) R1_xz(π)", "R1_xz(π) R3_xz(π) R2_xz(π) R1_xz(π)"];
    for (product, label) in type_permutation_products().iter().zip(labels) {
        let worst = points.iter().map(|(_, x)| distance(&compose(product, x), &x.cycle())).fold(0.0, f64::max);
        report.push(Check::from_bool(format!("𝒯 = {label}"), worst < cfg.tol, format!("max deviation {worst:e}")));
    }
    report
}

/// The tangent-level dependencies also hold between the finite
/// transformations.
pub fn group_dependency_report(cfg: &Config) -> Report {
    let points = angles_and_points(cfg, 0x55);
    let g = GeneratorName::of;
    let mut report = Report::new("group dependencies");
    let mut check = |label: String, lhs: GeneratorName, rhs: [(GeneratorName, f64); 2]| {
        let worst = points
            .iter()
            .map(|(alpha, x)| {
                let factors: Vec<(GeneratorName, f64)> = rhs.iter().map(|(n, c)| (*n, c * alpha)).collect();
                distance(&build_generator(lhs).apply(alpha, x), &compose(&factors, x))
            })
            .fold(0.0, f64::max);
        report.push(Check::from_bool(label, worst < cfg.tol, format!("max deviation {worst:e}")));
    };
    for q in Unit::ALL {
        check(
            format!("S3_{q}(α) = S1_{q}(-α) S2_{q}(-α)"),
            g(Kind::S(q), 3),
            [(g(Kind::S(q), 1), -1.0), (g(Kind::S(q), 2), -1.0)],
        );
        check(
            format!("S1_{q}(α) = R3_x{q}(α) R2_x{q}(-α)"),
            g(Kind::S(q), 1),
            [(g(Kind::Rxq(q), 3), 1.0), (g(Kind::Rxq(q), 2), -1.0)],
        );
    }
    check("B3_tz(α) = B1_tz(-α) B2_tz(-α)".into(), g(Kind::Btz, 3), [(g(Kind::Btz, 1), -1.0), (g(Kind::Btz, 2), -1.0)]);
    report
}

/// Rank, dependency identities, closure, Jacobi, Killing form, Cartan set,
/// infinitesimal conservation and the curve commutator.
pub fn structure_suite(alg: &Algebra, cfg: &Config) -> Result<Vec<Report>> {
    Ok(vec![
        rank_report(alg),
        identity_report(alg),
        closure_report(alg, cfg),
        killing_report(alg, cfg),
        cartan_report(alg),
        infinitesimal_report(alg, cfg),
        kappa_report()?,
    ])
}

pub fn rank_report(alg: &Algebra) -> Report {
    let mut report = Report::new("rank");
    let stages = staged_rank(&alg.tangents);
    for s in &stages {
        report.push(Check::from_bool(
            format!("rank {}-set = {RANK}", s.kept),
            s.rank == RANK && s.eliminated_in_span,
            format!("rank {}, eliminated in span: {}", s.rank, s.eliminated_in_span),
        ));
    }
    let kept: Vec<usize> = stages.iter().map(|s| s.kept).collect();
    report.push(Check::from_bool("stages 135 → 100 → 79 → 78", kept == [135, 100, 79, 78], format!("{kept:?}")));
    report
}

pub fn identity_report(alg: &Algebra) -> Report {
    let mut report = Report::new("dependency identities");
    for id in dependency_identities() {
        let ok = alg.tangents.combination(&id.relation).is_zero();
        report.push(Check::from_bool(id.name, ok, ""));
    }
    report
}

pub fn closure_report(alg: &Algebra, cfg: &Config) -> Report {
    let mut report = Report::new("closure");
    report.push(Check::pass(format!(
        "all {} brackets lie in the span of the basis ({} non-zero)",
        RANK * (RANK - 1) / 2,
        alg.sc.brackets.len()
    )));
    let roundtrip = crate::structure::StructureConstants::from_json(&alg.sc.export(TableFormat::Json));
    report.push(Check::from_bool(
        "JSON table round-trips",
        roundtrip.as_ref().is_ok_and(|t| *t == alg.sc),
        roundtrip.err().map(|e| e.to_string()).unwrap_or_default(),
    ));
    let jac = alg.jacobi(cfg.jacobi, cfg.seed);
    report.push(Check::from_bool(
        format!("Jacobi identity on {} triples ({})", jac.checked, cfg.jacobi),
        jac.failures.is_empty(),
        if jac.failures.is_empty() { String::new() } else { format!("failures {:?}", &jac.failures[..jac.failures.len().min(5)]) },
    ));
    report
}

pub fn killing_report(alg: &Algebra, cfg: &Config) -> Report {
    let mut report = Report::new("Killing form");
    let k = alg.killing();
    report.push(Check::from_bool("diagonal in the basis", k.is_diagonal(), ""));
    let i = alg.killing_inertia();
    report.push(Check::from_bool(
        "inertia (52 negative, 26 positive)",
        i == Inertia { negative: 52, positive: 26, zero: 0 },
        format!("{i:?}"),
    ));
    let signs_match = alg
        .basis
        .iter()
        .all(|b| is_rotation(b) == (k[(b.index, b.index)] < Rational::zero()));
    report.push(Check::from_bool("negative exactly on rotations", signs_match, ""));
    let bad = alg.killing_invariance(cfg.samples * 50, cfg.seed);
    report.push(Check::from_bool("ad-invariance", bad.is_empty(), format!("{} failures", bad.len())));
    report
}

pub fn cartan_report(alg: &Algebra) -> Report {
    let c = alg.cartan_report();
    let mut report = Report::new("Cartan");
    report.push(Check::from_bool(format!("{{{}}} commute", c.names.join(", ")), c.commuting, ""));
    report.push(Check::from_bool(
        "centralizer dim 6",
        c.centralizer_dim == 6,
        format!("dim {}", c.centralizer_dim),
    ));
    report.push(Check::from_bool(
        "restricted Killing (4 negative, 2 positive)",
        c.killing_diagonal && c.inertia == Inertia { negative: 4, positive: 2, zero: 0 },
        format!("{:?}", c.inertia),
    ));
    report
}

/// Every tangent map has zero directional derivative of det at random
/// rational points; rotation tangents annihilate the trace.
pub fn infinitesimal_report(alg: &Algebra, cfg: &Config) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x66);
    let points: Vec<JordanElement<Rational>> = (0..10).map(|_| random_jordan_q(&mut rng)).collect();
    let shapes = GeneratorName::all_shapes();
    let mut bad: Vec<String> = shapes
        .par_iter()
        .filter(|&&name| {
            let t = alg.tangents.get(name);
            points.iter().any(|x| !t.det_derivative(x).is_zero())
        })
        .map(|n| n.to_string())
        .collect();
    bad.sort();
    let mut report = Report::new("infinitesimal conservation");
    report.push(Check::from_bool(
        format!("{} tangents: d/dα det = 0 at 10 rational points", shapes.len()),
        bad.is_empty(),
        bad.join(", "),
    ));
    let trace_bad: Vec<String> = shapes
        .iter()
        .filter(|n| !n.is_boost() && !alg.tangents.get(**n).annihilates_trace())
        .map(|n| n.to_string())
        .collect();
    report.push(Check::from_bool("rotation tangents annihilate trace", trace_bad.is_empty(), trace_bad.join(", ")));
    let boosts_move_trace = shapes.iter().filter(|n| n.is_boost()).all(|n| !alg.tangents.get(*n).annihilates_trace());
    report.push(Check::from_bool("boost tangents move trace", boosts_move_trace, ""));
    report
}

pub fn kappa_report() -> Result<Report> {
    let names: Vec<GeneratorName> = (1..=3).flat_map(GeneratorName::elementary).collect();
    let k = check_kappa(&names)?;
    let mut report = Report::new("curve commutator");
    report.push(Check::from_bool(
        format!("curve = κ·[L1, L2] on {} pairs, κ = {}", k.pairs, k.kappa),
        k.failures.is_empty() && k.kappa == Rational::one() / Rational::from_integer(4.into()),
        if k.failures.is_empty() { String::new() } else { format!("{} failures, first {:?}", k.failures.len(), k.failures[0]) },
    ));
    Ok(report)
}
