//! The 78-element basis of sl(3,𝕆), its structure constants, Killing form
//! and Cartan subalgebra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::DIM;
use crate::linalg::{inertia, Echelon, Inertia, QMatrix};
use crate::octonion::Unit;
use crate::scalars::{format_rational, int, parse_rational, rat, Rational};
use crate::tangent::{curve_jets, TangentMap};
use crate::transforms::{GeneratorName, Kind};

pub const RANK: usize = 78;

/// A rational linear combination of generators, e.g. `G_l-S1_l` or
/// `1/2*B1_tz+B2_tx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination {
    pub terms: Vec<(Rational, GeneratorName)>,
}

impl Combination {
    pub fn single(name: GeneratorName) -> Self {
        Self { terms: vec![(Rational::one(), name)] }
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorName> + '_ {
        self.terms.iter().map(|t| t.1)
    }
}

impl From<GeneratorName> for Combination {
    fn from(name: GeneratorName) -> Self {
        Self::single(name)
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (c, name)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str("-")?,
                (_, false) => f.write_str("+")?,
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Combination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty combination".into()));
        }
        let mut terms = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let split = term.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(|| Error::Parse(format!("no generator in term {term:?}")))?;
            let (coeff, name) = term.split_at(split);
            let coeff = coeff.trim_end_matches('*');
            let c = if coeff.is_empty() { Rational::one() } else { parse_rational(coeff)? };
            terms.push((c * int(sign), name.parse()?));
        }
        Ok(Self { terms })
    }
}

/// One element of the fixed 78-element basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub index: usize,
    pub name: String,
    pub definition: Combination,
}

/// The basis in its documented order: `A_q`, `G_q`, `S1_q`, `R1_xq` (7 each),
/// `Ra_xz` (3), `Ra_zq` (21), `Ba_tx` (3), `Ba_tq` (21), `B1_tz`,
/// `B2_tz-B3_tz`. Units run `i, j, k, kl, jl, il, l`; types run 1, 2, 3.
pub fn basis_definitions() -> Vec<BasisElement> {
    let mut defs: Vec<Combination> = Vec::with_capacity(RANK);
    for f in [Kind::A, Kind::G, Kind::S, Kind::Rxq] {
        defs.extend(Unit::ALL.map(|q| GeneratorName::of(f(q), 1).into()));
    }
    defs.extend((1..=3).map(|a| GeneratorName::of(Kind::Rxz, a).into()));
    for a in 1..=3 {
        defs.extend(Unit::ALL.map(|q| GeneratorName::of(Kind::Rzq(q), a).into()));
    }
    defs.extend((1..=3).map(|a| GeneratorName::of(Kind::Btx, a).into()));
    for a in 1..=3 {
        defs.extend(Unit::ALL.map(|q| GeneratorName::of(Kind::Btq(q), a).into()));
    }
    defs.push(GeneratorName::of(Kind::Btz, 1).into());
    defs.push(Combination {
        terms: vec![
            (Rational::one(), GeneratorName::of(Kind::Btz, 2)),
            (-Rational::one(), GeneratorName::of(Kind::Btz, 3)),
        ],
    });
    defs.into_iter()
        .enumerate()
        .map(|(index, definition)| BasisElement { index, name: definition.to_string(), definition })
        .collect()
}

/// Whether a basis element is a rotation (compact direction).
pub fn is_rotation(element: &BasisElement) -> bool {
    element.definition.generators().all(|g| !g.is_boost())
}

/// Tangent maps of every generator shape, keyed by name.
#[derive(Clone, Debug)]
pub struct TangentTable {
    maps: BTreeMap<GeneratorName, TangentMap>,
}

impl TangentTable {
    pub fn build() -> Self {
        let names = GeneratorName::all_shapes();
        let maps = curve_jets(&names).into_iter().map(|j| (j.name, j.tangent())).collect();
        Self { maps }
    }

    pub fn get(&self, name: GeneratorName) -> &TangentMap {
        &self.maps[&name]
    }

    pub fn combination(&self, c: &Combination) -> TangentMap {
        let m = c
            .terms
            .iter()
            .fold(QMatrix::zeros(DIM, DIM), |acc, (k, g)| &acc + &self.get(*g).m.scale(k));
        TangentMap::new(m, c.to_string())
    }
}

/// One stage of the reduction of the 135 generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub kept: usize,
    pub rank: usize,
    /// Every generator dropped so far lies in the span of the kept ones.
    pub eliminated_in_span: bool,
}

fn drop_set(stage: usize) -> Vec<GeneratorName> {
    let mut out = Vec::new();
    if stage >= 1 {
        for a in 2..=3 {
            for q in Unit::ALL {
                out.push(GeneratorName::of(Kind::A(q), a));
                out.push(GeneratorName::of(Kind::G(q), a));
            }
        }
        out.extend(Unit::ALL.map(|q| GeneratorName::of(Kind::S(q), 3)));
    }
    if stage >= 2 {
        for q in Unit::ALL {
            out.push(GeneratorName::of(Kind::Rxq(q), 2));
            out.push(GeneratorName::of(Kind::Rxq(q), 3));
            out.push(GeneratorName::of(Kind::S(q), 2));
        }
    }
    if stage >= 3 {
        out.push(GeneratorName::of(Kind::Btz, 3));
    }
    out
}

/// Ranks along `135 → 100 → 79 → 78`.
pub fn staged_rank(table: &TangentTable) -> Vec<Stage> {
    let all = GeneratorName::all_135();
    (0..4)
        .into_par_iter()
        .map(|stage| {
            let dropped = drop_set(stage);
            let kept: Vec<GeneratorName> = all.iter().copied().filter(|g| !dropped.contains(g)).collect();
            let flats: Vec<Vec<Rational>> = kept.iter().map(|&g| table.get(g).flatten()).collect();
            let span = Echelon::from_vectors(DIM * DIM, &flats);
            let eliminated_in_span = dropped.iter().all(|&g| span.contains(&table.get(g).flatten()));
            Stage { kept: kept.len(), rank: span.rank(), eliminated_in_span }
        })
        .collect()
}

/// A named exact linear relation `Σ cᵢ L̇ᵢ = 0` between tangent maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub relation: Combination,
}

/// The dependency identities among the 135 tangents, one per unit where the
/// relation is indexed by `q`.
pub fn dependency_identities() -> Vec<Identity> {
    let g = GeneratorName::of;
    let one = Rational::one;
    let mut out = Vec::new();
    let mut push = |name: String, terms: Vec<(Rational, GeneratorName)>| {
        out.push(Identity { name, relation: Combination { terms } });
    };
    for q in Unit::ALL {
        for a in 2..=3 {
            push(format!("A1_{q} = A{a}_{q}"), vec![(one(), g(Kind::A(q), 1)), (-one(), g(Kind::A(q), a))]);
            push(format!("G1_{q} = G{a}_{q}"), vec![(one(), g(Kind::G(q), 1)), (-one(), g(Kind::G(q), a))]);
        }
        push(
            format!("S1_{q} + S2_{q} + S3_{q} = 0"),
            (1..=3).map(|a| (one(), g(Kind::S(q), a))).collect(),
        );
        push(
            format!("R2_x{q} = -1/2 R1_x{q} - 1/2 S1_{q}"),
            vec![(one(), g(Kind::Rxq(q), 2)), (rat(1, 2), g(Kind::Rxq(q), 1)), (rat(1, 2), g(Kind::S(q), 1))],
        );
        push(
            format!("S2_{q} = 3/2 R1_x{q} - 1/2 S1_{q}"),
            vec![(one(), g(Kind::S(q), 2)), (rat(-3, 2), g(Kind::Rxq(q), 1)), (rat(1, 2), g(Kind::S(q), 1))],
        );
        push(
            format!("S1_{q} = R3_x{q} - R2_x{q}"),
            vec![(one(), g(Kind::S(q), 1)), (-one(), g(Kind::Rxq(q), 3)), (one(), g(Kind::Rxq(q), 2))],
        );
    }
    push("B1_tz + B2_tz + B3_tz = 0".into(), (1..=3).map(|a| (one(), g(Kind::Btz, a))).collect());
    out
}

/// Solves for coordinates of a tangent map in the 78 basis tangents.
#[derive(Clone, Debug)]
struct CoordinateSolver {
    pivots: Vec<usize>,
    inverse: QMatrix,
    /// Sparse basis tangents, `(flat index, value)`.
    sparse: Vec<Vec<(usize, Rational)>>,
}

impl CoordinateSolver {
    fn new(tangents: &[TangentMap]) -> Result<Self> {
        let flats: Vec<Vec<Rational>> = tangents.iter().map(TangentMap::flatten).collect();
        let span = Echelon::from_vectors(DIM * DIM, &flats);
        if span.rank() != tangents.len() {
            return Err(Error::Rank { expected: tangents.len(), found: span.rank() });
        }
        let pivots = span.pivots().to_vec();
        let p = QMatrix::from_rows(
            &pivots.iter().map(|&c| flats.iter().map(|f| f[c].clone()).collect()).collect::<Vec<_>>(),
        );
        let sparse = flats
            .iter()
            .map(|f| f.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
            .collect();
        Ok(Self { pivots, inverse: p.inverse()?, sparse })
    }

    fn solve(&self, m: &QMatrix) -> Option<Vec<Rational>> {
        let flat = m.as_slice();
        let rhs: Vec<Rational> = self.pivots.iter().map(|&c| flat[c].clone()).collect();
        let coords = self.inverse.mat_vec(&rhs);
        let mut rebuilt = vec![Rational::zero(); flat.len()];
        for (c, entries) in coords.iter().zip(&self.sparse) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in entries {
                rebuilt[*i] += c * x;
            }
        }
        (rebuilt == flat).then_some(coords)
    }
}

/// Sparse structure constants `[e_i, e_j] = Σ_k c^k_ij e_k`, stored for
/// `i < j` with non-zero brackets only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub names: Vec<String>,
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    basis: Vec<JsonBasis>,
    brackets: Vec<JsonBracket>,
}

#[derive(Serialize, Deserialize)]
struct JsonBasis {
    index: usize,
    name: String,
}

#[derive(Serialize, Deserialize)]
struct JsonBracket {
    i: usize,
    j: usize,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    k: usize,
    c: String,
}

/// Export format of the commutation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Sparse bracket of two basis elements, antisymmetry applied.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let support = |v: &[Rational]| -> Vec<usize> { (0..v.len()).filter(|&i| !v[i].is_zero()).collect() };
        let (sx, sy) = (support(x), support(y));
        let mut out = vec![Rational::zero(); self.dim()];
        for &i in &sx {
            for &j in &sy {
                let (key, flip) = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => continue,
                    std::cmp::Ordering::Less => ((i, j), false),
                    std::cmp::Ordering::Greater => ((j, i), true),
                };
                let Some(terms) = self.brackets.get(&key) else { continue };
                let w = &x[i] * &y[j];
                for (k, c) in terms {
                    if flip {
                        out[*k] -= &w * c;
                    } else {
                        out[*k] += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `ad(e_i)` as a matrix: column `j` holds `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_basis(i, j) {
                m[(k, j)] = c;
            }
        }
        m
    }

    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (&(i, j), terms) in &self.brackets {
            // [x, e_j] picks up x_i c_ij, [x, e_i] picks up -x_j c_ij
            for (k, c) in terms {
                if !x[i].is_zero() {
                    m[(*k, j)] += &x[i] * c;
                }
                if !x[j].is_zero() {
                    m[(*k, i)] -= &x[j] * c;
                }
            }
        }
        m
    }

    /// `Σ_cyclic [e_i, [e_j, e_k]] = 0`.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim();
        let mut total = vec![Rational::zero(); n];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, v) in self.bracket_basis(b, c) {
                for (r, w) in self.bracket_basis(a, m) {
                    total[r] += &v * &w;
                }
            }
        }
        total.iter().all(Zero::is_zero)
    }

    pub fn killing_form(&self) -> QMatrix {
        let n = self.dim();
        let ads: Vec<Vec<(usize, usize, Rational)>> = (0..n)
            .map(|i| {
                let m = self.ad_basis(i);
                (0..n)
                    .flat_map(|r| (0..n).map(move |c| (r, c)))
                    .filter(|&(r, c)| !m[(r, c)].is_zero())
                    .map(|(r, c)| (r, c, m[(r, c)].clone()))
                    .collect()
            })
            .collect();
        let dense: Vec<QMatrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let rows: Vec<Vec<Rational>> = (0..n)
            .into_par_iter()
            .map(|a| {
                (0..n)
                    .map(|b| {
                        ads[a].iter().fold(Rational::zero(), |acc, (r, c, v)| {
                            let w = &dense[b][(*c, *r)];
                            if w.is_zero() { acc } else { acc + v * w }
                        })
                    })
                    .collect()
            })
            .collect();
        QMatrix::from_rows(&rows)
    }

    pub fn export(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Json => {
                let table = JsonTable {
                    basis: self.names.iter().enumerate().map(|(index, name)| JsonBasis { index, name: name.clone() }).collect(),
                    brackets: self
                        .brackets
                        .iter()
                        .map(|(&(i, j), terms)| JsonBracket {
                            i,
                            j,
                            terms: terms.iter().map(|(k, c)| JsonTerm { k: *k, c: format_rational(c) }).collect(),
                        })
                        .collect(),
                };
                serde_json::to_string_pretty(&table).expect("table serializes") + "\n"
            }
            TableFormat::Csv => {
                let mut out = String::from("i,j,k,c\n");
                for (&(i, j), terms) in &self.brackets {
                    for (k, c) in terms {
                        out.push_str(&format!("{i},{j},{k},{}\n", format_rational(c)));
                    }
                }
                out
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: JsonTable = serde_json::from_str(text)?;
        let names: Vec<String> = table.basis.into_iter().map(|b| b.name).collect();
        let mut brackets = BTreeMap::new();
        for b in table.brackets {
            if b.i >= b.j || b.j >= names.len() {
                return Err(Error::Parse(format!("bracket index pair ({}, {}) out of order or range", b.i, b.j)));
            }
            let terms = b
                .terms
                .into_iter()
                .map(|t| Ok((t.k, parse_rational(&t.c)?)))
                .collect::<Result<Vec<_>>>()?;
            brackets.insert((b.i, b.j), terms);
        }
        Ok(Self { names, brackets })
    }

    /// Reads the CSV form; basis names are not part of the CSV.
    pub fn from_csv(text: &str, names: Vec<String>) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("i,j,k,c") {
            return Err(Error::Parse("missing CSV header i,j,k,c".into()));
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.trim().split(',').collect();
            let [i, j, k, c] = fields[..] else {
                return Err(Error::Parse(format!("bad CSV row {line:?}")));
            };
            let idx = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {s:?}")));
            brackets.entry((idx(i)?, idx(j)?)).or_default().push((idx(k)?, parse_rational(c)?));
        }
        Ok(Self { names, brackets })
    }
}

/// How many Jacobi triples to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Full,
    Random(usize),
}

impl FromStr for JacobiMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            _ => s
                .strip_prefix("rand:")
                .and_then(|n| n.parse().ok())
                .map(Self::Random)
                .ok_or_else(|| Error::Parse(format!("jacobi mode must be full or rand:N, got {s:?}"))),
        }
    }
}

impl fmt::Display for JacobiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Full => f.write_str("full"),
            Self::Random(n) => write!(f, "rand:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub checked: usize,
    pub failures: Vec<(usize, usize, usize)>,
}

/// Facts about the Cartan set `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub names: Vec<String>,
    pub commuting: bool,
    pub centralizer_dim: usize,
    pub killing_diagonal: bool,
    pub inertia: Inertia,
}

/// The Lie algebra sl(3,𝕆) in its 78-element basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub basis: Vec<BasisElement>,
    pub tangents: TangentTable,
    basis_tangents: Vec<TangentMap>,
    solver: CoordinateSolver,
    pub sc: StructureConstants,
    killing: QMatrix,
}

impl Algebra {
    pub fn build() -> Result<Self> {
        Self::with_tangents(TangentTable::build())
    }

    pub fn with_tangents(tangents: TangentTable) -> Result<Self> {
        let basis = basis_definitions();
        let basis_tangents: Vec<TangentMap> = basis
            .iter()
            .map(|b| tangents.combination(&b.definition).relabel(b.name.clone()))
            .collect();
        let solver = CoordinateSolver::new(&basis_tangents)?;
        let pairs: Vec<(usize, usize)> = (0..RANK).flat_map(|i| (i + 1..RANK).map(move |j| (i, j))).collect();
        let solved: Vec<Result<((usize, usize), Vec<(usize, Rational)>)>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let m = basis_tangents[i].m.commutator(&basis_tangents[j].m);
                let coords = solver
                    .solve(&m)
                    .ok_or_else(|| Error::NonClosure(basis[i].name.clone(), basis[j].name.clone()))?;
                let terms = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                Ok(((i, j), terms))
            })
            .collect();
        let mut brackets = BTreeMap::new();
        for r in solved {
            let (key, terms): ((usize, usize), Vec<(usize, Rational)>) = r?;
            if !terms.is_empty() {
                brackets.insert(key, terms);
            }
        }
        let sc = StructureConstants { names: basis.iter().map(|b| b.name.clone()).collect(), brackets };
        let killing = sc.killing_form();
        Ok(Self { basis, tangents, basis_tangents, solver, sc, killing })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn names(&self) -> &[String] {
        &self.sc.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn unit_vector(&self, index: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[index] = Rational::one();
        v
    }

    pub fn basis_tangent(&self, index: usize) -> &TangentMap {
        &self.basis_tangents[index]
    }

    /// Coordinates of an arbitrary 27×27 matrix, if it lies in the algebra.
    pub fn coordinates(&self, m: &QMatrix) -> Option<Vec<Rational>> {
        self.solver.solve(m)
    }

    /// The 27×27 matrix of a coordinate vector.
    pub fn matrix_of(&self, v: &[Rational]) -> QMatrix {
        v.iter()
            .zip(&self.basis_tangents)
            .filter(|(c, _)| !c.is_zero())
            .fold(QMatrix::zeros(DIM, DIM), |acc, (c, t)| &acc + &t.m.scale(c))
    }

    /// Coordinates of a combination such as `G_l-S1_l` or `B2_tz-B3_tz`.
    pub fn element(&self, expr: &str) -> Result<Vec<Rational>> {
        let c: Combination = expr.parse()?;
        self.combination(&c)
    }

    pub fn combination(&self, c: &Combination) -> Result<Vec<Rational>> {
        let t = self.tangents.combination(c);
        self.coordinates(&t.m)
            .ok_or_else(|| Error::Dependency(format!("{c} does not lie in the algebra")))
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.sc.bracket(x, y)
    }

    pub fn killing(&self) -> &QMatrix {
        &self.killing
    }

    pub fn killing_of(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let kx = self.killing.mat_vec(y);
        x.iter().zip(&kx).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn killing_inertia(&self) -> Inertia {
        inertia(&self.killing)
    }

    pub fn jacobi(&self, mode: JacobiMode, seed: u64) -> JacobiReport {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = match mode {
            JacobiMode::Full => (0..n)
                .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
                .collect(),
            JacobiMode::Random(count) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
            }
        };
        let mut failures: Vec<(usize, usize, usize)> =
            triples.par_iter().copied().filter(|&(i, j, k)| !self.sc.jacobi_holds(i, j, k)).collect();
        failures.sort_unstable();
        JacobiReport { checked: triples.len(), failures }
    }

    /// `K([x,y],z) = −K(y,[x,z])` on random basis triples; returns failures.
    pub fn killing_invariance(&self, samples: usize, seed: u64) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<(usize, usize, usize)> =
            (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        triples
            .into_par_iter()
            .filter(|&(x, y, z)| {
                let (ex, ey, ez) = (self.unit_vector(x), self.unit_vector(y), self.unit_vector(z));
                let lhs = self.killing_of(&self.bracket(&ex, &ey), &ez);
                let rhs = -self.killing_of(&ey, &self.bracket(&ex, &ez));
                lhs != rhs
            })
            .collect()
    }

    /// Indices of `C = {B1_tz, B2_tz-B3_tz, R1_xl, A_l, G_l, S1_l}`.
    pub fn cartan_set(&self) -> Vec<usize> {
        ["B1_tz", "B2_tz-B3_tz", "R1_xl", "A_l", "G_l", "S1_l"]
            .iter()
            .map(|n| self.index_of(n).expect("Cartan element is a basis element"))
            .collect()
    }

    /// Dimension of `{y : [c, y] = 0 for every c}`.
    pub fn centralizer_dim(&self, elements: &[Vec<Rational>]) -> usize {
        let rows: Vec<Vec<Rational>> = elements.iter().flat_map(|c| self.sc.ad(c).row_vecs()).collect();
        self.dim() - crate::linalg::rank(&rows)
    }

    pub fn cartan_report(&self) -> CartanReport {
        let idx = self.cartan_set();
        let vecs: Vec<Vec<Rational>> = idx.iter().map(|&i| self.unit_vector(i)).collect();
        let commuting = idx.iter().all(|&i| idx.iter().all(|&j| self.sc.bracket_basis(i, j).is_empty()));
        let k = self.killing.restrict(&vecs);
        CartanReport {
            names: idx.iter().map(|&i| self.basis[i].name.clone()).collect(),
            commuting,
            centralizer_dim: self.centralizer_dim(&vecs),
            killing_diagonal: k.is_diagonal(),
            inertia: inertia(&k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn algebra() -> &'static Algebra {
        static ALGEBRA: OnceLock<Algebra> = OnceLock::new();
        ALGEBRA.get_or_init(|| Algebra::build().expect("algebra builds"))
    }

    #[test]
    fn basis_has_78_distinct_names() {
        let defs = basis_definitions();
        assert_eq!(defs.len(), RANK);
        let mut names: Vec<&str> = defs.iter().map(|b| b.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), RANK);
        assert_eq!(defs.iter().filter(|b| is_rotation(b)).count(), 52);
    }

    #[test]
    fn combinations_parse_and_print() {
        for s in ["G_l-S1_l", "G_l+2S2_l", "B2_tz-B3_tz", "1/2*A_i-3/4*R1_j_k", "-B1_tz"] {
            let c: Combination = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("2*S2_l".parse::<Combination>().unwrap().to_string(), "2S2_l");
        assert!("".parse::<Combination>().is_err());
        assert!("2+".parse::<Combination>().is_err());
    }

    #[test]
    fn dependency_identities_hold_exactly() {
        let a = algebra();
        for id in dependency_identities() {
            assert!(a.tangents.combination(&id.relation).is_zero(), "{}", id.name);
        }
    }

    #[test]
    fn staged_reduction() {
        let stages = staged_rank(&algebra().tangents);
        let kept: Vec<usize> = stages.iter().map(|s| s.kept).collect();
        assert_eq!(kept, vec![135, 100, 79, 78]);
        assert!(stages.iter().all(|s| s.rank == RANK && s.eliminated_in_span));
    }

    #[test]
    fn brackets_are_antisymmetric_and_closed() {
        let a = algebra();
        let ad = |x: usize, y: usize| a.sc.bracket_basis(x, y);
        for i in 0..RANK {
            assert!(ad(i, i).is_empty());
            for j in 0..RANK {
                let lhs = ad(i, j);
                let rhs: Vec<(usize, Rational)> = ad(j, i).into_iter().map(|(k, c)| (k, -c)).collect();
                assert_eq!(lhs, rhs);
            }
        }
        // spot-check the solved coordinates against the 27×27 commutator
        for (i, j) in [(0, 77), (30, 55), (52, 53), (76, 60)] {
            let direct = a.basis_tangent(i).m.commutator(&a.basis_tangent(j).m);
            assert_eq!(a.matrix_of(&a.bracket(&a.unit_vector(i), &a.unit_vector(j))), direct);
        }
    }

    #[test]
    fn boost_brackets_are_rotations() {
        let a = algebra();
        let (tz, tx) = (a.index_of("B1_tz").unwrap(), a.index_of("B1_tx").unwrap());
        let terms = a.sc.bracket_basis(tz, tx);
        assert!(!terms.is_empty());
        assert!(terms.iter().all(|(k, _)| is_rotation(&a.basis[*k])));
    }

    #[test]
    fn killing_form_is_diagonal_with_e6_signature() {
        let a = algebra();
        assert!(a.killing().is_symmetric());
        assert!(a.killing().is_diagonal());
        assert_eq!(a.killing_inertia(), Inertia { negative: 52, positive: 26, zero: 0 });
        for b in &a.basis {
            let kk = &a.killing()[(b.index, b.index)];
            assert_eq!(kk < &Rational::zero(), is_rotation(b), "{}", b.name);
        }
        let (ai, gl) = (a.index_of("A_i").unwrap(), a.index_of("G_l").unwrap());
        assert!(a.killing()[(ai, gl)].is_zero());
        assert!(a.killing_invariance(200, 7).is_empty());
    }

    #[test]
    fn cartan_subalgebra() {
        let r = algebra().cartan_report();
        assert!(r.commuting);
        assert_eq!(r.centralizer_dim, 6);
        assert!(r.killing_diagonal);
        assert_eq!(r.inertia, Inertia { negative: 4, positive: 2, zero: 0 });
    }

    #[test]
    fn jacobi_on_random_triples() {
        let r = algebra().jacobi(JacobiMode::Random(2000), 1);
        assert_eq!(r.checked, 2000);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn table_round_trips() {
        let sc = &algebra().sc;
        let json = sc.export(TableFormat::Json);
        assert_eq!(&StructureConstants::from_json(&json).unwrap(), sc);
        let csv = sc.export(TableFormat::Csv);
        assert!(csv.starts_with("i,j,k,c\n"));
        assert_eq!(&StructureConstants::from_csv(&csv, sc.names.clone()).unwrap(), sc);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["basis"].as_array().unwrap().len(), RANK);
    }

    #[test]
    fn jacobi_mode_parses() {
        assert_eq!("full".parse::<JacobiMode>().unwrap(), JacobiMode::Full);
        assert_eq!("rand:100".parse::<JacobiMode>().unwrap(), JacobiMode::Random(100));
        assert!("rand:x".parse::<JacobiMode>().is_err());
    }
}
