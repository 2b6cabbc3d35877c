//! The acceptance battery, one test per criterion. Each test prints a single
//! `criterion N: PASS|FAIL` line followed by any failing checks.

use std::sync::OnceLock;

use octo_e6::report::Report;
use octo_e6::structure::JacobiMode;
use octo_e6::subalgebras::{check_direct_sum, check_single_so8, signature, verify_record, Signature};
use octo_e6::verify::{self, Config, Verifier};

const TOL: f64 = 1e-10;
const SAMPLES: usize = 20;
const JACOBI_TRIPLES: usize = 100_000;

fn verifier() -> &'static Verifier {
    static V: OnceLock<Verifier> = OnceLock::new();
    V.get_or_init(|| {
        Verifier::new(Config { tol: TOL, samples: SAMPLES, seed: 26, jacobi: JacobiMode::Random(JACOBI_TRIPLES) })
    })
}

fn cfg() -> &'static Config {
    &verifier().cfg
}

fn conclude(n: u8, title: &str, reports: &[Report]) {
    let passed = reports.iter().all(Report::passed);
    println!("criterion {n}: {} {title}", if passed { "PASS" } else { "FAIL" });
    for r in reports {
        for c in r.failures() {
            println!("    {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
        }
    }
    assert!(passed, "criterion {n} failed");
}

#[test]
fn criterion_01_basis_count() {
    let alg = verifier().algebra().unwrap();
    let r = verify::rank_report(alg);
    conclude(1, "rank 135 → 100 → 79 → 78", &[r]);
}

#[test]
fn criterion_02_dependency_identities() {
    let alg = verifier().algebra().unwrap();
    let r = verify::identity_report(alg);
    assert_eq!(r.checks.len(), 7 * 8 + 1);
    conclude(2, "dependency identities exact", &[r]);
}

#[test]
fn criterion_03_group_type_independence() {
    let r = verify::type_independence_report(cfg());
    assert_eq!(r.checks.len(), 14);
    conclude(3, "A, G type independent at 20 random (α, X)", &[r]);
}

#[test]
fn criterion_04_closure_and_jacobi() {
    let alg = verifier().algebra().unwrap();
    let r = verify::closure_report(alg, cfg());
    assert!(r.checks.iter().any(|c| c.name.starts_with("Jacobi identity on 100000 triples")));
    conclude(4, "closure and Jacobi on 10⁵ random triples", &[r]);
}

#[test]
fn criterion_05_killing_form() {
    let alg = verifier().algebra().unwrap();
    conclude(5, "Killing form diagonal, inertia (52, 26)", &[verify::killing_report(alg, cfg())]);
}

#[test]
fn criterion_06_cartan() {
    let alg = verifier().algebra().unwrap();
    conclude(6, "Cartan set commutes, centralizer dim 6", &[verify::cartan_report(alg)]);
}

#[test]
fn criterion_07_chain_dimensions() {
    let v = verifier();
    let (alg, reg) = (v.algebra().unwrap(), v.registry().unwrap());
    let mut expected: Vec<(String, usize, usize, usize)> = vec![
        ("g2".into(), 14, 14, 0),
        ("su(3)_C".into(), 8, 8, 0),
        ("su(2)_H".into(), 3, 3, 0),
        ("so(4)_H".into(), 6, 6, 0),
        ("f4".into(), 52, 52, 0),
        ("su(3,H)".into(), 21, 21, 0),
        ("sl(3,H)".into(), 35, 21, 14),
        ("sl(3,C)_s".into(), 16, 8, 8),
        ("su(3,C)_s".into(), 8, 8, 0),
        ("sl(3,R)_s".into(), 8, 3, 5),
        ("so(3,R)_s".into(), 3, 3, 0),
        ("sl(2,H)".into(), 15, 10, 5),
        ("su(2,H)".into(), 10, 10, 0),
    ];
    for a in 1..=3 {
        expected.push((format!("so(4)^{a}"), 6, 6, 0));
        expected.push((format!("so(5)^{a}"), 10, 10, 0));
        expected.push((format!("so(6)^{a}"), 15, 15, 0));
        expected.push((format!("so(7)^{a}"), 21, 21, 0));
        expected.push((format!("so(8)^{a}"), 28, 28, 0));
        expected.push((format!("su(2,O)^{a}"), 36, 36, 0));
        expected.push((format!("sl(2,O)^{a}"), 45, 36, 9));
    }
    let mut reports = Vec::new();
    let mut pinned = Report::new("pinned dimensions");
    for (name, dim, compact, noncompact) in &expected {
        let span = reg.get(name).unwrap();
        let sig = signature(alg, span);
        pinned.push(octo_e6::report::Check::from_bool(
            format!("{name}: dim {dim}, signature ({compact}, {noncompact})"),
            span.dim() == *dim && sig == Signature::new(*compact, *noncompact, 0),
            format!("dim {}, signature {sig}", span.dim()),
        ));
        let record = reg.records.iter().find(|r| &r.name == name).unwrap();
        reports.push(verify_record(alg, reg, record));
    }
    reports.push(pinned);
    reports.push(check_single_so8(reg));
    reports.push(check_direct_sum(alg, "so(4) = su(2)_H + so(3)_c", reg.get("su(2)_H").unwrap(), reg.get("so(3)_c").unwrap()));
    conclude(7, "chain dimensions and signatures", &reports);
}

#[test]
fn criterion_08_direct_sums() {
    let v = verifier();
    let (alg, reg) = (v.algebra().unwrap(), v.registry().unwrap());
    let sums = [
        ("sl(3,H)", "su(2)_H", 38),
        ("g2", "sl(3,R)_s", 22),
        ("su(3)_C", "sl(3,C)_s", 24),
        ("sl(2,C)", "so(6)^1", 21),
        ("f4", "u(-1)", 53),
        ("su(2,O)^1", "u(-1)", 37),
        ("sl(2,O)^1", "u(-1)", 46),
    ];
    let mut reports: Vec<Report> = sums
        .iter()
        .map(|(g, h, dim)| {
            let (gs, hs) = (reg.get(g).unwrap(), reg.get(h).unwrap());
            assert_eq!(gs.dim() + hs.dim(), *dim, "{g} + {h}");
            check_direct_sum(alg, &format!("{g} + {h}"), gs, hs)
        })
        .collect();
    for (g, h) in octo_e6::subalgebras::direct_sums() {
        if sums.iter().any(|s| (s.0, s.1) == (g, h)) {
            continue;
        }
        reports.push(check_direct_sum(alg, &format!("{g} + {h}"), reg.get(g).unwrap(), reg.get(h).unwrap()));
    }
    conclude(8, "direct sums", &reports);
}

#[test]
fn criterion_09_stabilizers() {
    let v = verifier();
    let reports = v.run(verify::Suite::Stabilizers).unwrap();
    conclude(9, "stabilizers and the 45 + 16 + 16 + 1 decomposition", &reports);
}

#[test]
fn criterion_10_type_machinery() {
    let r = verify::type_permutation_report(cfg());
    conclude(10, "𝒯³ = 𝓘, det preserved, three product identities", &[r]);
}

#[test]
fn criterion_11_conservation() {
    let alg = verifier().algebra().unwrap();
    let reports = [verify::conservation_report(cfg()), verify::infinitesimal_report(alg, cfg())];
    conclude(11, "det and trace conservation", &reports);
}

#[test]
fn criterion_12_commutator_oracle() {
    let r = verify::kappa_report().unwrap();
    assert!(r.checks[0].name.contains("9045 pairs"), "{}", r.checks[0].name);
    conclude(12, "curve commutator = κ·[L1, L2] with one κ", &[r]);
}
