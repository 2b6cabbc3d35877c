//! Subalgebra closure engine and the registry of named subalgebras, chains,
//! direct sums and type stabilizers of sl(3,𝕆).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{JordanElement, DIM};
use crate::linalg::{inertia, Echelon, QMatrix};
use crate::octonion::{oct_mul, Octonion, Unit};
use crate::report::{Check, Report};
use crate::scalars::{int, Rational};
use crate::structure::{Algebra, Combination};
use crate::tangent::TangentMap;
use crate::transforms::{GeneratorName, Kind};

/// A subspace of the 78-dimensional algebra, in basis coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub generators: Vec<Vec<Rational>>,
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Self { generators: Vec::new(), echelon: Echelon::new(dim) }
    }

    pub fn span(dim: usize, generators: Vec<Vec<Rational>>) -> Self {
        let echelon = Echelon::from_vectors(dim, &generators);
        Self { generators, echelon }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ambient_dim()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        self.echelon.basis()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.echelon.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    fn insert(&mut self, v: Vec<Rational>) -> bool {
        if self.echelon.insert(&v) {
            self.generators.push(v);
            true
        } else {
            false
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for v in other.basis() {
            out.insert(v.clone());
        }
        out
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }
}

/// Smallest bracket-closed subspace containing `s`.
pub fn close(alg: &Algebra, s: &Subspace) -> Subspace {
    let mut out = Subspace::span(s.ambient_dim(), s.basis().to_vec());
    let mut frontier: Vec<Vec<Rational>> = out.basis().to_vec();
    while !frontier.is_empty() {
        let current = out.generators.clone();
        let brackets: Vec<Vec<Rational>> = frontier
            .par_iter()
            .flat_map_iter(|x| current.iter().map(move |y| (x, y)))
            .map(|(x, y)| alg.bracket(x, y))
            .collect();
        frontier = brackets.into_iter().filter(|b| out.insert(b.clone())).collect();
    }
    out
}

/// Whether `s` is already bracket-closed.
pub fn is_closed(alg: &Algebra, s: &Subspace) -> bool {
    let b = s.basis();
    b.par_iter()
        .enumerate()
        .all(|(i, x)| b[i + 1..].iter().all(|y| s.contains(&alg.bracket(x, y))))
}

/// Counts of compact (Killing-negative), non-compact (Killing-positive) and
/// null directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub compact: usize,
    pub noncompact: usize,
    pub null: usize,
}

impl Signature {
    pub const fn new(compact: usize, noncompact: usize, null: usize) -> Self {
        Self { compact, noncompact, null }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.null == 0 {
            write!(f, "({}, {})", self.compact, self.noncompact)
        } else {
            write!(f, "({}, {}, null {})", self.compact, self.noncompact, self.null)
        }
    }
}

pub fn restricted_killing(alg: &Algebra, s: &Subspace) -> QMatrix {
    if s.dim() == 0 {
        return QMatrix::zeros(0, 0);
    }
    alg.killing().restrict(s.basis())
}

pub fn signature(alg: &Algebra, s: &Subspace) -> Signature {
    let i = inertia(&restricted_killing(alg, s));
    Signature::new(i.negative, i.positive, i.zero)
}

/// A named subalgebra with its generator recipe and expectations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraRecord {
    pub name: String,
    /// Complex classification label, e.g. `b4` or `a2+a2`.
    pub label: String,
    pub generators: Vec<String>,
    pub expected_dim: usize,
    pub expected_signature: Signature,
    /// Records that must be contained in this one.
    pub includes: Vec<String>,
    /// Whether the recipe must already be bracket-closed (a basis rather
    /// than a generating set).
    pub spanning: bool,
}

fn record(
    name: &str,
    label: &str,
    generators: Vec<String>,
    dim: usize,
    sig: Signature,
    includes: &[&str],
) -> SubalgebraRecord {
    SubalgebraRecord {
        name: name.into(),
        label: label.into(),
        generators,
        expected_dim: dim,
        expected_signature: sig,
        includes: includes.iter().map(|s| s.to_string()).collect(),
        spanning: true,
    }
}

const IM_H: [Unit; 3] = [Unit::K, Unit::KL, Unit::L];

fn names(kinds: impl IntoIterator<Item = GeneratorName>) -> Vec<String> {
    kinds.into_iter().map(|g| g.to_string()).collect()
}

fn g(kind: Kind, a: u8) -> GeneratorName {
    GeneratorName::of(kind, a)
}

/// Transverse planes of type `a` whose units all lie in `units`.
fn planes_within(units: &[Unit], a: u8) -> Vec<String> {
    let mut out = Vec::new();
    for r in Unit::ALL {
        for (p, q) in r.quaternionic_pairs() {
            if units.contains(&p) && units.contains(&q) {
                out.push(g(Kind::Transverse(p, q), a).to_string());
            }
        }
    }
    out
}

fn rotations(a: u8) -> Vec<String> {
    let mut out = vec![g(Kind::Rxz, a).to_string()];
    out.extend(names(Unit::ALL.map(|q| g(Kind::Rxq(q), a))));
    out.extend(names(Unit::ALL.map(|q| g(Kind::Rzq(q), a))));
    out.extend(planes_within(&Unit::ALL, a));
    out
}

fn boosts(a: u8, units: &[Unit]) -> Vec<String> {
    let mut out = names([g(Kind::Btz, a), g(Kind::Btx, a)]);
    out.extend(names(units.iter().map(|&q| g(Kind::Btq(q), a))));
    out
}

fn so7(a: u8) -> Vec<String> {
    let mut out = Vec::new();
    for q in Unit::ALL {
        out.push(format!("A_{q}"));
        out.push(format!("G_{q}"));
        out.push(g(Kind::S(q), a).to_string());
    }
    out
}

/// `b^a_± = ⟨B^a_tx ∓ R^a_xz, B^a_tq ± R^a_zq⟩`.
pub fn null_rotations(a: u8, plus: bool) -> Vec<String> {
    let (first, rest) = if plus { ('-', '+') } else { ('+', '-') };
    let mut out = vec![format!("B{a}_tx{first}R{a}_xz")];
    out.extend(Unit::ALL.map(|q| format!("B{a}_t{q}{rest}R{a}_z{q}")));
    out
}

fn concat(parts: &[Vec<String>]) -> Vec<String> {
    parts.concat()
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn type_name(a: u8) -> &'static str {
    ["", "I", "II", "III"][a as usize]
}

/// Every named subalgebra checked by the `chains` suite.
pub fn registry() -> Vec<SubalgebraRecord> {
    use Unit::*;
    let sig = Signature::new;
    let mut r = Vec::new();
    let generating = |rec: SubalgebraRecord| SubalgebraRecord { spanning: false, ..rec };

    // compact chains
    r.push(record("u(1)", "u1", strs(&["A_l"]), 1, sig(1, 0, 0), &[]));
    r.push(record("su(2)_H", "a1", strs(&["A_k", "A_kl", "A_l"]), 3, sig(3, 0, 0), &["u(1)"]));
    r.push(record(
        "su(3)_C",
        "a2",
        strs(&["A_i", "A_j", "A_k", "A_kl", "A_jl", "A_il", "A_l", "G_l"]),
        8,
        sig(8, 0, 0),
        &["su(2)_H"],
    ));
    let mut g2 = names(Unit::ALL.map(|q| g(Kind::A(q), 1)));
    g2.extend(names(Unit::ALL.map(|q| g(Kind::G(q), 1))));
    r.push(record("g2", "g2", g2.clone(), 14, sig(14, 0, 0), &["su(3)_C"]));
    r.push(record(
        "so(4)_H",
        "a1+a1",
        concat(&[strs(&["A_k", "A_kl", "A_l"]), IM_H.iter().map(|q| format!("G_{q}-S1_{q}")).collect()]),
        6,
        sig(6, 0, 0),
        &["su(2)_H"],
    ));
    r.push(record(
        "so(3)_c",
        "a1",
        IM_H.iter().map(|q| format!("G_{q}+2S1_{q}")).collect(),
        3,
        sig(3, 0, 0),
        &[],
    ));
    for a in 1..=3u8 {
        let t = a.to_string();
        r.push(record(
            &format!("so(4)^{t}"),
            "a1+a1",
            concat(&[strs(&["A_k", "A_kl", "A_l"]), IM_H.iter().map(|q| format!("G_{q}+2S{a}_{q}")).collect()]),
            6,
            sig(6, 0, 0),
            &["su(2)_H"],
        ));
        r.push(record(
            &format!("so(5)^{t}"),
            "b2",
            planes_within(&[I, J, K, JL, IL], a),
            10,
            sig(10, 0, 0),
            &[&format!("so(4)^{t}")],
        ));
        r.push(record(
            &format!("so(6)^{t}"),
            "d3",
            planes_within(&[I, J, K, KL, JL, IL], a),
            15,
            sig(15, 0, 0),
            &[&format!("so(5)^{t}"), "su(3)_C"],
        ));
        r.push(record(
            &format!("so(7)^{t}"),
            "b3",
            so7(a),
            21,
            sig(21, 0, 0),
            &[&format!("so(6)^{t}"), "g2"],
        ));
        r.push(record(
            &format!("so(8)^{t}"),
            "d4",
            concat(&[so7(a), names(Unit::ALL.map(|q| g(Kind::Rxq(q), a)))]),
            28,
            sig(28, 0, 0),
            &[&format!("so(7)^{t}")],
        ));
        r.push(record(
            &format!("su(2,O)^{t}"),
            "b4",
            concat(&[
                so7(a),
                names(Unit::ALL.map(|q| g(Kind::Rxq(q), a))),
                names([g(Kind::Rxz, a)]),
                names(Unit::ALL.map(|q| g(Kind::Rzq(q), a))),
            ]),
            36,
            sig(36, 0, 0),
            &[&format!("so(8)^{t}"), "so(8)^1"],
        ));
        r.push(record(
            &format!("sl(2,O)^{t}"),
            "d5",
            concat(&[rotations(a), boosts(a, &Unit::ALL)]),
            45,
            sig(36, 9, 0),
            &[&format!("su(2,O)^{t}")],
        ));
    }
    r.push(record(
        "f4",
        "f4",
        (1..=3).flat_map(rotations).collect(),
        52,
        sig(52, 0, 0),
        &["su(2,O)^1", "su(2,O)^2", "su(2,O)^3", "su(3,H)"],
    ));
    r.push(generating(record("f4 from so(9)", "f4", concat(&[rotations(1), rotations(2)]), 52, sig(52, 0, 0), &["f4"])));
    r.push(record("sl(3,O)", "e6", (1..=3).flat_map(|a| concat(&[rotations(a), boosts(a, &Unit::ALL)])).collect(), 78, sig(52, 26, 0), &["f4", "sl(2,O)^1", "sl(3,H)"]));

    // quaternionic, complex and real reductions
    let su2h_type1 = concat(&[
        names([g(Kind::Rxz, 1)]),
        names(IM_H.map(|q| g(Kind::Rxq(q), 1))),
        names(IM_H.map(|q| g(Kind::Rzq(q), 1))),
        IM_H.iter().map(|q| format!("G_{q}-S1_{q}")).collect(),
    ]);
    r.push(record("su(2,H)", "b2", su2h_type1.clone(), 10, sig(10, 0, 0), &["su(2,C)"]));
    r.push(record("sl(2,H)", "d3", concat(&[su2h_type1, boosts(1, &IM_H)]), 15, sig(10, 5, 0), &["su(2,H)", "sl(2,C)"]));
    let su3h = concat(&[
        (1..=3).map(|a| g(Kind::Rxz, a).to_string()).collect(),
        (1..=3).flat_map(|a| names(IM_H.map(|q| g(Kind::Rzq(q), a)))).collect(),
        (1..=2).flat_map(|a| names(IM_H.map(|q| g(Kind::Rxq(q), a)))).collect(),
        IM_H.iter().map(|q| format!("G_{q}-S1_{q}")).collect(),
    ]);
    r.push(record("su(3,H)", "c3", su3h.clone(), 21, sig(21, 0, 0), &["su(2,H)", "su(3,C)_s"]));
    r.push(record(
        "sl(3,H)",
        "a5",
        concat(&[
            su3h,
            (1..=3).flat_map(|a| boosts(a, &IM_H)[1..].to_vec()).collect(),
            strs(&["B1_tz", "B2_tz-B3_tz"]),
        ]),
        35,
        sig(21, 14, 0),
        &["su(3,H)", "sl(2,H)", "sl(3,C)_s"],
    ));
    let su2c = strs(&["R1_xz", "R1_xl", "R1_zl"]);
    r.push(record("su(2,C)", "a1", su2c.clone(), 3, sig(3, 0, 0), &[]));
    r.push(record("sl(2,C)", "a1+a1", concat(&[su2c, strs(&["B1_tz", "B1_tx", "B1_tl"])]), 6, sig(3, 3, 0), &["su(2,C)"]));
    let su3cs = strs(&["R1_xz", "R2_xz", "R3_xz", "R1_xl", "R2_xl", "R1_zl", "R2_zl", "R3_zl"]);
    r.push(record("su(3,C)_s", "a2", su3cs.clone(), 8, sig(8, 0, 0), &["su(2,C)", "so(3,R)_s"]));
    r.push(record(
        "sl(3,C)_s",
        "a2+a2",
        concat(&[su3cs, strs(&["B1_tz", "B2_tz", "B1_tx", "B2_tx", "B3_tx", "B1_tl", "B2_tl", "B3_tl"])]),
        16,
        sig(8, 8, 0),
        &["su(3,C)_s", "sl(2,C)", "sl(3,R)_s"],
    ));
    r.push(record("so(3,R)_s", "a1", strs(&["R1_xz", "R2_xz", "R3_xz"]), 3, sig(3, 0, 0), &[]));
    r.push(record(
        "sl(3,R)_s",
        "a2",
        strs(&["R1_xz", "R2_xz", "R3_xz", "B1_tz", "B2_tz", "B1_tx", "B2_tx", "B3_tx"]),
        8,
        sig(3, 5, 0),
        &["so(3,R)_s", "so(2,1)_s"],
    ));
    r.push(record("so(2,1)_s", "a1", strs(&["R1_xz", "B1_tz", "B1_tx"]), 3, sig(1, 2, 0), &[]));

    // abelian pieces and stabilizers
    r.push(record("u(-1)", "d1", strs(&["B2_tz-B3_tz"]), 1, sig(0, 1, 0), &[]));
    r.push(record("d1+d1", "d1+d1", strs(&["B1_tz", "B2_tz-B3_tz"]), 2, sig(0, 2, 0), &["u(-1)"]));
    r.push(record(
        "so(8,1)_l",
        "b4",
        concat(&[
            names([g(Kind::Rxz, 1)]),
            names(Unit::ALL[..6].iter().map(|&q| g(Kind::Rxq(q), 1))),
            names(Unit::ALL[..6].iter().map(|&q| g(Kind::Rzq(q), 1))),
            planes_within(&Unit::ALL[..6], 1),
            boosts(1, &Unit::ALL[..6]),
        ]),
        36,
        sig(28, 8, 0),
        &["so(6)^1"],
    ));
    for a in 1..=3u8 {
        for plus in [true, false] {
            let sign = if plus { "+" } else { "-" };
            r.push(record(&format!("b^{a}_{sign}"), "abelian", null_rotations(a, plus), 8, sig(0, 0, 8), &[]));
        }
    }
    for (a, (p, m)) in [(1u8, (2u8, 3u8)), (2, (3, 1)), (3, (1, 2))] {
        r.push(record(
            &format!("stab({})", type_name(a)),
            "abelian",
            concat(&[null_rotations(p, true), null_rotations(m, false)]),
            16,
            sig(0, 0, 16),
            &[&format!("b^{p}_+"), &format!("b^{m}_-")],
        ));
    }
    r.push(record(
        "stab(I)^perp",
        "abelian",
        concat(&[null_rotations(2, false), null_rotations(3, true)]),
        16,
        sig(0, 0, 16),
        &["b^2_-", "b^3_+"],
    ));
    r
}

/// Spans of every record, closed, keyed by name.
pub struct Registry {
    pub records: Vec<SubalgebraRecord>,
    pub spans: BTreeMap<String, Subspace>,
    /// Span of the recipe before closure.
    pub raw: BTreeMap<String, Subspace>,
}

impl Registry {
    pub fn build(alg: &Algebra) -> Result<Self> {
        let records = registry();
        let built: Vec<Result<(String, Subspace, Subspace)>> = records
            .par_iter()
            .map(|rec| {
                let raw = span_of(alg, &rec.generators)?;
                let closed = close(alg, &raw);
                Ok((rec.name.clone(), raw, closed))
            })
            .collect();
        let mut spans = BTreeMap::new();
        let mut raw = BTreeMap::new();
        for b in built {
            let (name, r, s) = b?;
            raw.insert(name.clone(), r);
            spans.insert(name, s);
        }
        Ok(Self { records, spans, raw })
    }

    pub fn get(&self, name: &str) -> Result<&Subspace> {
        self.spans.get(name).ok_or_else(|| Error::UnknownName(name.into()))
    }
}

/// Span of generator expressions in the 78-basis.
pub fn span_of(alg: &Algebra, generators: &[String]) -> Result<Subspace> {
    let vecs = generators.iter().map(|g| alg.element(g)).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(alg.dim(), vecs))
}

pub fn verify_record(alg: &Algebra, reg: &Registry, rec: &SubalgebraRecord) -> Report {
    let mut report = Report::new(rec.name.clone());
    let (raw, span) = (&reg.raw[&rec.name], &reg.spans[&rec.name]);
    report.push(Check::from_bool(
        format!("{} dim {}", rec.name, rec.expected_dim),
        span.dim() == rec.expected_dim,
        format!("closure dim {}", span.dim()),
    ));
    if rec.spanning {
        report.push(Check::from_bool(
            format!("{} recipe already closed", rec.name),
            raw.dim() == span.dim(),
            format!("recipe spans {}, closure {}", raw.dim(), span.dim()),
        ));
    }
    let sig = signature(alg, span);
    report.push(Check::from_bool(
        format!("{} signature {}", rec.name, rec.expected_signature),
        sig == rec.expected_signature,
        format!("found {sig}"),
    ));
    for inc in &rec.includes {
        let ok = reg.spans.get(inc).is_some_and(|s| span.contains_subspace(s));
        report.push(Check::from_bool(format!("{inc} ⊂ {}", rec.name), ok, ""));
    }
    report
}

/// `[g, g'] = 0`, `g ∩ g' = 0` and `g + g'` closed.
pub fn check_direct_sum(alg: &Algebra, name: &str, g: &Subspace, h: &Subspace) -> Report {
    let mut report = Report::new(name);
    let offending: Vec<(usize, usize)> = g
        .basis()
        .iter()
        .enumerate()
        .flat_map(|(i, x)| h.basis().iter().enumerate().map(move |(j, y)| (i, j, x, y)))
        .filter(|(_, _, x, y)| alg.bracket(x, y).iter().any(|c| !c.is_zero()))
        .map(|(i, j, _, _)| (i, j))
        .collect();
    report.push(Check::from_bool(
        format!("{name}: summands commute"),
        offending.is_empty(),
        if offending.is_empty() {
            String::new()
        } else {
            format!("{} non-zero brackets, first {:?}", offending.len(), &offending[..offending.len().min(5)])
        },
    ));
    let meet = g.intersection_dim(h);
    report.push(Check::from_bool(format!("{name}: trivial intersection"), meet == 0, format!("intersection dim {meet}")));
    let sum = g.sum(h);
    report.push(Check::from_bool(
        format!("{name}: sum closed, dim {}", g.dim() + h.dim()),
        is_closed(alg, &sum) && sum.dim() == g.dim() + h.dim(),
        format!("sum dim {}", sum.dim()),
    ));
    report
}

/// `[g, h] ⊆ h`.
pub fn check_ideal(alg: &Algebra, h: &Subspace, g: &Subspace) -> bool {
    g.basis().iter().all(|x| h.basis().iter().all(|y| h.contains(&alg.bracket(x, y))))
}

/// The direct sums of the type-dependent/type-independent table and of the
/// `sl(n,𝕂) ⊕ g′` table.
pub fn direct_sums() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sl(2,O)^1", "u(-1)"),
        ("su(2,O)^1", "u(-1)"),
        ("so(7)^1", "d1+d1"),
        ("g2", "sl(3,R)_s"),
        ("su(3)_C", "sl(3,C)_s"),
        ("su(2)_H", "sl(3,H)"),
        ("sl(3,H)", "su(2)_H"),
        ("sl(3,C)_s", "su(3)_C"),
        ("sl(2,H)", "su(2)_H"),
        ("sl(2,C)", "so(6)^1"),
        ("su(3,C)_s", "su(3)_C"),
        ("su(3,H)", "su(2)_H"),
        ("f4", "u(-1)"),
        ("su(2,C)", "so(6)^1"),
        ("su(2,H)", "su(2)_H"),
        ("su(2)_H", "so(3)_c"),
    ]
}

/// A Cartan element annotated on a chain arrow: it lies in `to` but not in
/// `from` (`None` for the zero algebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: Option<String>,
    pub to: String,
    pub element: String,
}

pub fn arrows() -> Vec<Arrow> {
    let arrow = |from: Option<&str>, to: &str, element: &str| Arrow {
        from: from.map(String::from),
        to: to.into(),
        element: element.into(),
    };
    let mut out = vec![
        arrow(None, "u(1)", "A_l"),
        arrow(Some("su(2)_H"), "su(3)_C", "G_l"),
    ];
    for a in 1..=3 {
        out.push(arrow(Some("su(2)_H"), &format!("so(4)^{a}"), &format!("G_l+2S{a}_l")));
        out.push(arrow(Some(&format!("so(5)^{a}")), &format!("so(6)^{a}"), &format!("G_l-S{a}_l")));
        out.push(arrow(Some("g2"), &format!("so(7)^{a}"), &format!("S{a}_l")));
        out.push(arrow(Some(&format!("so(7)^{a}")), "so(8)^1", "R1_xl"));
        out.push(arrow(Some(&format!("su(2,O)^{a}")), &format!("sl(2,O)^{a}"), &format!("B{a}_tz")));
    }
    out.push(arrow(Some("sl(2,O)^1"), "sl(3,O)", "B2_tz"));
    out.push(arrow(Some("sl(2,O)^2"), "sl(3,O)", "B1_tz"));
    out.push(arrow(Some("sl(2,O)^3"), "sl(3,O)", "B2_tz"));
    out.push(arrow(Some("f4"), "sl(3,O)", "B1_tz"));
    out.push(arrow(Some("f4"), "sl(3,O)", "B2_tz"));
    out
}

pub fn check_arrows(alg: &Algebra, reg: &Registry) -> Report {
    let mut report = Report::new("chain arrows");
    for a in arrows() {
        let from = a.from.as_deref().unwrap_or("0");
        let name = format!("{} → {} adds {}", from, a.to, a.element);
        let result = (|| -> Result<bool> {
            let v = alg.element(&a.element)?;
            let in_to = reg.get(&a.to)?.contains(&v);
            let in_from = match &a.from {
                Some(f) => reg.get(f)?.contains(&v),
                None => v.iter().all(Zero::is_zero),
            };
            let from_inside = match &a.from {
                Some(f) => reg.get(&a.to)?.contains_subspace(reg.get(f)?),
                None => true,
            };
            Ok(in_to && !in_from && from_inside)
        })();
        report.push(match result {
            Ok(ok) => Check::from_bool(name, ok, ""),
            Err(e) => Check::fail(name, e.to_string()),
        });
    }
    report
}

/// Only one so(8): the type-2 and type-3 recipes span the type-1 so(8).
pub fn check_single_so8(reg: &Registry) -> Report {
    let mut report = Report::new("so(8)");
    let one = &reg.spans["so(8)^1"];
    for a in 2..=3 {
        report.push(Check::from_bool(format!("so(8)^{a} = so(8)^1"), reg.spans[&format!("so(8)^{a}")].same_span(one), ""));
    }
    report
}

/// Linear change of basis from the 21 transverse planes to `A_q`, `G_q`,
/// `S_q`: rows are `A_q` (7), `G_q` (7), `S_q` (7); columns are the planes in
/// quaternionic-pair order.
pub fn plane_to_ags() -> QMatrix {
    let planes: Vec<(Unit, usize)> = Unit::ALL.iter().flat_map(|&r| (0..3).map(move |n| (r, n))).collect();
    let mut m = QMatrix::zeros(21, 21);
    for (block, coeffs) in [[1, -1, 0], [1, 1, -2], [1, 1, 1]].iter().enumerate() {
        for (qi, &q) in Unit::ALL.iter().enumerate() {
            for (n, &c) in coeffs.iter().enumerate() {
                let col = planes.iter().position(|&p| p == (q, n)).expect("plane listed");
                m[(block * 7 + qi, col)] = int(c);
            }
        }
    }
    m
}

/// The 21 transverse planes of type `a` in the column order of
/// [`plane_to_ags`].
pub fn planes(a: u8) -> Vec<GeneratorName> {
    Unit::ALL
        .iter()
        .flat_map(|&r| r.quaternionic_pairs().map(|(p, q)| g(Kind::Transverse(p, q), a)))
        .collect()
}

/// Checks that `plane_to_ags` is invertible and reproduces the composite
/// tangents from the plane tangents.
pub fn check_plane_to_ags(alg: &Algebra) -> Report {
    let mut report = Report::new("plane to AGS");
    let m = plane_to_ags();
    let det = m.determinant();
    report.push(Check::from_bool("determinant non-zero", !det.is_zero(), format!("det = {det}")));
    report.push(Check::from_result("inverse exists", m.inverse()));
    let plane_tangents: Vec<&TangentMap> = planes(1).into_iter().map(|p| alg.tangents.get(p)).collect();
    let composites: Vec<GeneratorName> = [Kind::A, Kind::G, Kind::S]
        .iter()
        .flat_map(|f| Unit::ALL.map(|q| g(f(q), 1)))
        .collect();
    let all = composites.iter().enumerate().all(|(row, &c)| {
        let rebuilt = (0..21)
            .filter(|&col| !m[(row, col)].is_zero())
            .fold(QMatrix::zeros(DIM, DIM), |acc, col| &acc + &plane_tangents[col].m.scale(&m[(row, col)]));
        rebuilt == alg.tangents.get(c).m
    });
    report.push(Check::from_bool("rows reproduce A, G, S tangents", all, ""));
    report
}

/// The 8×8 block of a 27×27 matrix acting on one off-diagonal octonion.
fn octonion_block(m: &QMatrix, start: usize) -> impl Fn(&Octonion<Rational>) -> Octonion<Rational> + '_ {
    move |o| {
        let mut c: [Rational; 8] = Default::default();
        for (r, cr) in c.iter_mut().enumerate() {
            for k in 0..8 {
                if !o.c[k].is_zero() {
                    *cr += &m[(start + r, start + k)] * &o.c[k];
                }
            }
        }
        Octonion::new(c)
    }
}

/// Whether the induced action on each off-diagonal octonion slot is a
/// derivation of 𝕆.
pub fn acts_as_derivation(m: &QMatrix) -> bool {
    [3, 11, 19].iter().all(|&start| {
        let d = octonion_block(m, start);
        (0..8).all(|a| {
            (0..8).all(|b| {
                let (ea, eb) = (Octonion::basis(a), Octonion::basis(b));
                d(&oct_mul(&ea, &eb)) == oct_mul(&d(&ea), &eb) + oct_mul(&ea, &d(&eb))
            })
        })
    })
}

/// Whether the induced action on every octonion slot sends `ℓ` to zero.
pub fn annihilates_l(m: &QMatrix) -> bool {
    [3, 11, 19].iter().all(|&start| (0..8).all(|r| m[(start + r, start + Unit::L.index())].is_zero()))
}

pub fn check_derivations(alg: &Algebra, reg: &Registry) -> Report {
    let mut report = Report::new("octonion derivations");
    let g2 = &reg.spans["g2"];
    let ok = g2.basis().iter().all(|x| acts_as_derivation(&alg.matrix_of(x)));
    report.push(Check::from_bool("g2 acts by derivations of O", ok, ""));
    let s = alg.element("S1_l").map(|v| acts_as_derivation(&alg.matrix_of(&v)));
    report.push(Check::from_bool("S1_l is not a derivation", matches!(s, Ok(false)), ""));
    let su3 = &reg.spans["su(3)_C"];
    let ok = su3.basis().iter().all(|x| annihilates_l(&alg.matrix_of(x)));
    report.push(Check::from_bool("su(3)_C annihilates l", ok, ""));
    report
}

/// The 27×27 matrix of `𝒳 ↦ 𝒯𝒳𝒯†` in Jordan coordinates.
pub fn cycle_matrix() -> QMatrix {
    let cols: Vec<Vec<Rational>> = (0..DIM).map(|k| JordanElement::<Rational>::basis(k).cycle().coords()).collect();
    QMatrix::from_columns(&cols)
}

/// Each stab(a) kills the type-a vector block: its 10 rows vanish.
pub fn check_stabilizer(alg: &Algebra, reg: &Registry, a: usize) -> Report {
    let name = format!("stab({})", type_name(a as u8));
    let mut report = Report::new(name.clone());
    let rows = JordanElement::<Rational>::vector_block_coords(a);
    let stab = &reg.spans[&name];
    let ok = stab.basis().iter().all(|x| {
        let m = alg.matrix_of(x);
        rows.iter().all(|&r| (0..DIM).all(|c| m[(r, c)].is_zero()))
    });
    report.push(Check::from_bool(format!("{name} has zero type-{a} vector rows"), ok, ""));
    // cyclic consistency: conjugating by the type permutation shifts the type
    let next = (a % 3) + 1;
    let next_name = format!("stab({})", type_name(next as u8));
    let c = cycle_matrix();
    let c_inv = c.inverse().expect("permutation is invertible");
    let shifted: Option<Vec<Vec<Rational>>> =
        stab.basis().iter().map(|x| alg.coordinates(&c.matmul(&alg.matrix_of(x)).matmul(&c_inv))).collect();
    let ok = shifted.is_some_and(|v| Subspace::span(alg.dim(), v).same_span(&reg.spans[&next_name]));
    report.push(Check::from_bool(format!("T {name} T^-1 = {next_name}"), ok, ""));
    report
}

/// Dimension and semidirect structure of `g ⊕ stab(I)` combinations.
pub fn check_stabilizer_sums(alg: &Algebra, reg: &Registry) -> Report {
    let mut report = Report::new("stab(I) sums");
    let stab = &reg.spans["stab(I)"];
    for (g, dim) in [("su(2)_H", 19), ("su(3)_C", 24), ("su(2,O)^1", 52), ("so(8,1)_l", 52), ("sl(2,O)^1", 61)] {
        let gs = &reg.spans[g];
        let sum = gs.sum(stab);
        report.push(Check::from_bool(
            format!("{g} + stab(I) closes, dim {dim}"),
            sum.dim() == dim && is_closed(alg, &sum),
            format!("dim {}", sum.dim()),
        ));
        report.push(Check::from_bool(format!("stab(I) is an ideal of {g} + stab(I)"), check_ideal(alg, stab, &sum), ""));
    }
    let big = reg.spans["sl(2,O)^1"].sum(stab);
    let k = restricted_killing(alg, &big);
    report.push(Check::from_bool(
        "Killing form degenerate on sl(2,O)^1 + stab(I)",
        k.rank() < big.dim(),
        format!("rank {} of {}", k.rank(), big.dim()),
    ));
    report
}

pub fn check_decomposition(alg: &Algebra, reg: &Registry) -> Report {
    let mut report = Report::new("decomposition");
    let parts = ["sl(2,O)^1", "stab(I)", "stab(I)^perp", "u(-1)"];
    let dims: Vec<usize> = parts.iter().map(|p| reg.spans[*p].dim()).collect();
    report.push(Check::from_bool("piece dims 45+16+16+1", dims == [45, 16, 16, 1], format!("{dims:?}")));
    let total = parts.iter().fold(Subspace::zero(alg.dim()), |acc, p| acc.sum(&reg.spans[*p]));
    report.push(Check::from_bool("pieces span sl(3,O)", total.dim() == 78, format!("rank {}", total.dim())));
    let perp = span_of(alg, &concat(&[null_rotations(2, false), null_rotations(3, true)]));
    report.push(Check::from_bool(
        "stab(I)^perp = b^2_- + b^3_+",
        perp.is_ok_and(|p| p.same_span(&reg.spans["stab(I)^perp"])),
        "",
    ));
    for a in 1..=3u8 {
        for plus in [true, false] {
            let sign = if plus { "+" } else { "-" };
            let name = format!("b^{a}_{sign}");
            let gens = null_rotations(a, plus);
            let vecs: Result<Vec<Vec<Rational>>> = gens.iter().map(|g| alg.element(g)).collect();
            let Ok(vecs) = vecs else {
                report.push(Check::fail(format!("{name} builds"), "generator not in algebra"));
                continue;
            };
            let abelian = vecs.iter().all(|x| vecs.iter().all(|y| alg.bracket(x, y).iter().all(Zero::is_zero)));
            let null = vecs.iter().all(|x| alg.killing_of(x, x).is_zero());
            let span = Subspace::span(alg.dim(), vecs);
            report.push(Check::from_bool(format!("{name} is 8-dim abelian"), abelian && span.dim() == 8, ""));
            report.push(Check::from_bool(format!("{name} basis is Killing-null"), null, ""));
            report.push(Check::from_bool(
                format!("{name} Killing form vanishes"),
                restricted_killing(alg, &span).is_zero(),
                "",
            ));
        }
    }
    let stab = &reg.spans["stab(I)"];
    report.push(Check::from_bool("stab(I) Killing form vanishes", restricted_killing(alg, stab).is_zero(), ""));
    report
}

/// Closure of an ad-hoc generator list, as used by the `closure` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub generators: Vec<String>,
    pub span_dim: usize,
    pub closure_dim: usize,
    pub signature: Signature,
}

pub fn closure_summary(alg: &Algebra, generators: &[String]) -> Result<ClosureSummary> {
    let raw = span_of(alg, generators)?;
    let closed = close(alg, &raw);
    Ok(ClosureSummary {
        generators: generators.to_vec(),
        span_dim: raw.dim(),
        closure_dim: closed.dim(),
        signature: signature(alg, &closed),
    })
}

/// Retypes every generator of a combination by a cyclic shift.
pub fn retype(c: &Combination, shift: u8) -> Combination {
    Combination {
        terms: c
            .terms
            .iter()
            .map(|(k, n)| (k.clone(), n.with_type((n.type_index - 1 + shift) % 3 + 1)))
            .collect(),
    }
}

/// All chain-level checks in a fixed order.
pub fn verify_all(alg: &Algebra, reg: &Registry) -> Vec<Report> {
    let mut reports: Vec<Report> = reg.records.par_iter().map(|r| verify_record(alg, reg, r)).collect();
    reports.push(check_single_so8(reg));
    reports.push(check_arrows(alg, reg));
    let sums: Vec<Report> = direct_sums()
        .par_iter()
        .map(|(a, b)| check_direct_sum(alg, &format!("{a} + {b}"), &reg.spans[*a], &reg.spans[*b]))
        .collect();
    reports.extend(sums);
    reports.push(check_plane_to_ags(alg));
    reports.push(check_derivations(alg, reg));
    reports
}

pub fn verify_stabilizers(alg: &Algebra, reg: &Registry) -> Vec<Report> {
    let mut reports: Vec<Report> = (1..=3).map(|a| check_stabilizer(alg, reg, a)).collect();
    reports.push(check_stabilizer_sums(alg, reg));
    reports.push(check_decomposition(alg, reg));
    reports
}
