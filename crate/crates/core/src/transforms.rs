//! One-parameter group transformations of the Jordan algebra.
//!
//! Every transformation is a sequence of conjugations `X ↦ (M X) M†` by 3×3
//! octonionic matrices. Type-1 matrices embed a 2×2 block as
//! `diag(M, 1)`; types 2 and 3 are obtained by conjugating the whole action
//! with the cyclic permutation `𝒯`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jordan::{JordanElement, OctMatrix3};
use crate::octonion::{Octonion, Unit};
use crate::scalars::{Analytic, Scalar};

/// Shape of a single Lorentz generator or of a composite built from
/// transverse rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Btz,
    Btx,
    Btq(Unit),
    Rxq(Unit),
    Rxz,
    Rzq(Unit),
    /// Rotation of the plane spanned by two imaginary units.
    Transverse(Unit, Unit),
    A(Unit),
    G(Unit),
    S(Unit),
}

impl Kind {
    pub fn is_boost(self) -> bool {
        matches!(self, Kind::Btz | Kind::Btx | Kind::Btq(_))
    }

    /// Single rows of the Lorentz table (everything except A, G, S).
    pub fn is_elementary(self) -> bool {
        !matches!(self, Kind::A(_) | Kind::G(_) | Kind::S(_))
    }
}

/// A generator together with its type index (1, 2 or 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorName {
    pub kind: Kind,
    pub type_index: u8,
}

impl GeneratorName {
    pub fn new(kind: Kind, type_index: u8) -> Result<Self> {
        if !(1..=3).contains(&type_index) {
            return Err(Error::InvalidGenerator(format!("type index {type_index} is not 1, 2 or 3")));
        }
        if let Kind::Transverse(p, q) = kind {
            if p == q {
                return Err(Error::InvalidGenerator(format!(
                    "transverse rotation needs two distinct units, got {p} twice"
                )));
            }
        }
        Ok(Self { kind, type_index })
    }

    /// Infallible constructor for names known to be valid.
    pub fn of(kind: Kind, type_index: u8) -> Self {
        Self::new(kind, type_index).expect("valid generator name")
    }

    pub fn transverse(p: Unit, q: Unit, type_index: u8) -> Result<Self> {
        Self::new(Kind::Transverse(p, q), type_index)
    }

    pub fn with_type(self, type_index: u8) -> Self {
        Self::of(self.kind, type_index)
    }

    pub fn is_boost(&self) -> bool {
        self.kind.is_boost()
    }

    /// The 45 Lorentz generators of one type: 9 boosts, 15 simple rotations
    /// and the 21 transverse rotations of the planes listed in the
    /// quaternionic-pair table.
    pub fn elementary(type_index: u8) -> Vec<Self> {
        let mut out = Self::lorentz_non_transverse(type_index);
        for r in Unit::ALL {
            for (p, q) in r.quaternionic_pairs() {
                out.push(Self::of(Kind::Transverse(p, q), type_index));
            }
        }
        out
    }

    fn lorentz_non_transverse(type_index: u8) -> Vec<Self> {
        let mut kinds = vec![Kind::Btz, Kind::Btx];
        kinds.extend(Unit::ALL.map(Kind::Btq));
        kinds.push(Kind::Rxz);
        kinds.extend(Unit::ALL.map(Kind::Rxq));
        kinds.extend(Unit::ALL.map(Kind::Rzq));
        kinds.into_iter().map(|k| Self::of(k, type_index)).collect()
    }

    /// The 45 generators of one type with the transverse rotations replaced
    /// by the `A`, `G`, `S` combinations.
    pub fn with_composites(type_index: u8) -> Vec<Self> {
        let mut out = Self::lorentz_non_transverse(type_index);
        for f in [Kind::A, Kind::G, Kind::S] {
            out.extend(Unit::ALL.map(|q| Self::of(f(q), type_index)));
        }
        out
    }

    /// The 135 generators of all three types, composites in place of planes.
    pub fn all_135() -> Vec<Self> {
        (1..=3).flat_map(Self::with_composites).collect()
    }

    /// Every generator shape of every type: 3 × (24 + 21 planes + 21 composites).
    pub fn all_shapes() -> Vec<Self> {
        let mut out = Vec::new();
        for a in 1..=3 {
            out.extend(Self::elementary(a));
            for f in [Kind::A, Kind::G, Kind::S] {
                out.extend(Unit::ALL.map(|q| Self::of(f(q), a)));
            }
        }
        out
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.type_index;
        match self.kind {
            Kind::Btz => write!(f, "B{a}_tz"),
            Kind::Btx => write!(f, "B{a}_tx"),
            Kind::Btq(q) => write!(f, "B{a}_t{q}"),
            Kind::Rxq(q) => write!(f, "R{a}_x{q}"),
            Kind::Rxz => write!(f, "R{a}_xz"),
            Kind::Rzq(q) => write!(f, "R{a}_z{q}"),
            Kind::Transverse(p, q) => write!(f, "R{a}_{p}_{q}"),
            Kind::A(q) if a == 1 => write!(f, "A_{q}"),
            Kind::G(q) if a == 1 => write!(f, "G_{q}"),
            Kind::A(q) => write!(f, "A{a}_{q}"),
            Kind::G(q) => write!(f, "G{a}_{q}"),
            Kind::S(q) => write!(f, "S{a}_{q}"),
        }
    }
}

impl FromStr for GeneratorName {
    type Err = Error;

    /// Parses names such as `B1_tz`, `B2_tkl`, `R3_xz`, `R1_xl`, `R2_zjl`,
    /// `R1_j_k` (transverse), `A_i`, `G2_l`, `S1_k`. `A`, `G` and `S` default
    /// to type 1 when no type is given.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognized generator name {s:?}"));
        let (head, tail) = s.split_once('_').ok_or_else(bad)?;
        let mut chars = head.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let digits: String = chars.collect();
        let type_index = if digits.is_empty() {
            if !matches!(letter, 'A' | 'G' | 'S') {
                return Err(bad());
            }
            1
        } else {
            digits.parse::<u8>().map_err(|_| bad())?
        };
        let unit = |u: &str| Unit::parse(u).map_err(|_| bad());
        let kind = match letter {
            'A' => Kind::A(unit(tail)?),
            'G' => Kind::G(unit(tail)?),
            'S' => Kind::S(unit(tail)?),
            'B' => match tail {
                "tz" => Kind::Btz,
                "tx" => Kind::Btx,
                t => Kind::Btq(unit(t.strip_prefix('t').ok_or_else(bad)?)?),
            },
            'R' => match tail {
                "xz" => Kind::Rxz,
                t if t.contains('_') => {
                    let (p, q) = t.split_once('_').ok_or_else(bad)?;
                    Kind::Transverse(unit(p)?, unit(q)?)
                }
                t if t.starts_with('x') => Kind::Rxq(unit(&t[1..])?),
                t if t.starts_with('z') => Kind::Rzq(unit(&t[1..])?),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        };
        GeneratorName::new(kind, type_index)
    }
}

/// One conjugation stage: the shape evaluated at `coeff · α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Step {
    coeff: i64,
    kind: Kind,
}

/// A one-parameter family `α ↦ R(α)` acting on the Jordan algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub name: GeneratorName,
    /// Elementary factors in application order (rightmost factor of the
    /// composition first).
    steps: Vec<Step>,
}

/// Composite `R_{p1,q1}(c1 α) ∘ R_{p2,q2}(c2 α) ∘ R_{p3,q3}(c3 α)` from the
/// quaternionic pairs of `q`, listed in application order.
fn composite_steps(q: Unit, coeffs: [i64; 3]) -> Vec<Step> {
    let pairs = q.quaternionic_pairs();
    (0..3)
        .rev()
        .filter(|&n| coeffs[n] != 0)
        .map(|n| Step { coeff: coeffs[n], kind: Kind::Transverse(pairs[n].0, pairs[n].1) })
        .collect()
}

pub fn build_generator(name: GeneratorName) -> GroupAction {
    let steps = match name.kind {
        // A_q = R_1(α) ∘ R_2(−α)
        Kind::A(q) => composite_steps(q, [1, -1, 0]),
        // G_q = R_1(α) ∘ R_2(α) ∘ R_3(−2α)
        Kind::G(q) => composite_steps(q, [1, 1, -2]),
        // S_q = R_1(α) ∘ R_2(α) ∘ R_3(α)
        Kind::S(q) => composite_steps(q, [1, 1, 1]),
        kind => vec![Step { coeff: 1, kind }],
    };
    GroupAction { name, steps }
}

fn embed<S: Scalar>(m: [[Octonion<S>; 2]; 2]) -> OctMatrix3<S> {
    let mut out = OctMatrix3::identity();
    for i in 0..2 {
        for j in 0..2 {
            out.e[i][j] = m[i][j].clone();
        }
    }
    out
}

fn real<S: Scalar>(s: S) -> Octonion<S> {
    Octonion::real(s)
}

fn imag<S: Scalar>(q: Unit, s: S) -> Octonion<S> {
    Octonion::unit(q).scale(&s)
}

/// Type-1 matrices for a single elementary shape at angle `theta`, in the
/// order they are applied.
fn type1_matrices<S: Analytic>(kind: Kind, theta: &S) -> Vec<OctMatrix3<S>> {
    let h = theta.clone() * S::from_ratio(1, 2);
    let zero = || real(S::zero());
    match kind {
        Kind::Btz => vec![embed([[real(h.exp()), zero()], [zero(), real((-h).exp())]])],
        Kind::Btx => {
            let (c, s) = (h.cosh(), h.sinh());
            vec![embed([[real(c.clone()), real(s.clone())], [real(s), real(c)]])]
        }
        Kind::Btq(q) => {
            let (c, s) = (h.cosh(), h.sinh());
            vec![embed([[real(c.clone()), imag(q, -s.clone())], [imag(q, s), real(c)]])]
        }
        Kind::Rxq(q) => {
            // exp(∓qα/2) = cos(α/2) ∓ q sin(α/2)
            let (c, s) = (h.cos(), h.sin());
            let minus = real(c.clone()) + imag(q, -s.clone());
            let plus = real(c) + imag(q, s);
            vec![embed([[minus, zero()], [zero(), plus]])]
        }
        Kind::Rxz => {
            let (c, s) = (h.cos(), h.sin());
            vec![embed([[real(c.clone()), real(s.clone())], [real(-s), real(c)]])]
        }
        Kind::Rzq(q) => {
            let (c, s) = (h.cos(), h.sin());
            vec![embed([[real(c.clone()), imag(q, s.clone())], [imag(q, s), real(c)]])]
        }
        Kind::Transverse(p, q) => {
            let first = imag(p, -S::one());
            let second = imag(p, h.cos()) + imag(q, h.sin());
            vec![
                embed([[first.clone(), zero()], [zero(), first]]),
                embed([[second.clone(), zero()], [zero(), second]]),
            ]
        }
        Kind::A(_) | Kind::G(_) | Kind::S(_) => unreachable!("composites are expanded into steps"),
    }
}

/// `(M X) M†` read back as a Jordan element.
fn conjugate<S: Scalar>(m: &OctMatrix3<S>, x: &JordanElement<S>) -> JordanElement<S> {
    JordanElement::from_matrix(&m.mul(&x.to_matrix()).mul(&m.adjoint()))
}

/// Both parenthesizations of `M X M†`, failing if they or the Hermitian
/// structure of the result disagree beyond `tol`.
fn conjugate_checked<S: Scalar>(m: &OctMatrix3<S>, x: &JordanElement<S>, tol: f64) -> Result<JordanElement<S>> {
    let xm = x.to_matrix();
    let left = m.mul(&xm).mul(&m.adjoint());
    let right = m.mul(&xm.mul(&m.adjoint()));
    let residual = left.sub(&right).magnitude() + left.hermiticity_defect();
    if residual > tol {
        return Err(Error::AssociationMismatch { residual, tol });
    }
    Ok(JordanElement::from_matrix(&left))
}

impl GroupAction {
    pub fn type_index(&self) -> usize {
        self.name.type_index as usize
    }

    /// `R(α)(X)` with every product associated as `(M X) M†`.
    pub fn apply<S: Analytic>(&self, alpha: &S, x: &JordanElement<S>) -> JordanElement<S> {
        self.apply_with(alpha, x, |m, y| Ok(conjugate(m, y)))
            .expect("unchecked conjugation is infallible")
    }

    /// Like [`apply`](Self::apply) but also evaluates `M (X M†)` at every
    /// stage and checks Hermiticity.
    pub fn apply_checked<S: Analytic>(&self, alpha: &S, x: &JordanElement<S>, tol: f64) -> Result<JordanElement<S>> {
        self.apply_with(alpha, x, |m, y| conjugate_checked(m, y, tol))
    }

    fn apply_with<S: Analytic>(
        &self,
        alpha: &S,
        x: &JordanElement<S>,
        conj: impl Fn(&OctMatrix3<S>, &JordanElement<S>) -> Result<JordanElement<S>>,
    ) -> Result<JordanElement<S>> {
        let shift = self.type_index() - 1;
        let mut y = x.cycled(3 - shift);
        for step in &self.steps {
            let theta = alpha.clone() * S::from_ratio(step.coeff, 1);
            for m in type1_matrices(step.kind, &theta) {
                y = conj(&m, &y)?;
            }
        }
        Ok(y.cycled(shift))
    }

    /// The same action conjugated into type `type_index`.
    pub fn retype(&self, type_index: u8) -> GroupAction {
        GroupAction { name: self.name.with_type(type_index), steps: self.steps.clone() }
    }

    /// The literal type-1 matrices of every conjugation stage at `alpha`.
    pub fn matrices<S: Analytic>(&self, alpha: &S) -> Vec<OctMatrix3<S>> {
        self.steps
            .iter()
            .flat_map(|step| type1_matrices(step.kind, &(alpha.clone() * S::from_ratio(step.coeff, 1))))
            .collect()
    }
}

/// The permutation matrix `𝒯` with `𝒯 X 𝒯†` cycling the three types.
pub fn type_permutation<S: Scalar>() -> OctMatrix3<S> {
    OctMatrix3::permutation([2, 0, 1])
}

/// Applies a composition `f1 ∘ f2 ∘ … ∘ fn` (rightmost first) of
/// `(generator, angle)` pairs.
pub fn compose<S: Analytic>(factors: &[(GeneratorName, S)], x: &JordanElement<S>) -> JordanElement<S> {
    factors
        .iter()
        .rev()
        .fold(x.clone(), |y, (name, alpha)| build_generator(*name).apply(alpha, &y))
}

/// Relative Euclidean distance between two float Jordan elements.
pub fn distance(a: &JordanElement<f64>, b: &JordanElement<f64>) -> f64 {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// The three product expressions for `𝒯` as compositions of `R^a_xz(±π)`.
pub fn type_permutation_products() -> [Vec<(GeneratorName, f64)>; 3] {
    use std::f64::consts::PI;
    let rxz = |a| GeneratorName::of(Kind::Rxz, a);
    [
        vec![(rxz(1), -PI), (rxz(2), -PI)],
        vec![(rxz(2), PI), (rxz(1), PI), (rxz(2), PI), (rxz(1), PI)],
        vec![(rxz(1), PI), (rxz(3), PI), (rxz(2), PI), (rxz(1), PI)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};
    use std::f64::consts::PI;

    fn sample(seed: u64) -> JordanElement<f64> {
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let v: Vec<f64> = (0..27)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as f64 / (1u64 << 31) as f64) * 2.0 - 1.0
            })
            .collect();
        JordanElement::from_coords(&v)
    }

    #[test]
    fn names_roundtrip() {
        for name in GeneratorName::all_shapes() {
            let text = name.to_string();
            assert_eq!(text.parse::<GeneratorName>().unwrap(), name, "{text}");
        }
        assert_eq!("S_l".parse::<GeneratorName>().unwrap(), GeneratorName::of(Kind::S(Unit::L), 1));
        assert!("R1_k_k".parse::<GeneratorName>().is_err());
        assert!("B4_tz".parse::<GeneratorName>().is_err());
        assert!("Q1_tz".parse::<GeneratorName>().is_err());
        assert!(GeneratorName::transverse(Unit::J, Unit::J, 1).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(GeneratorName::elementary(2).len(), 45);
        assert_eq!(GeneratorName::all_135().len(), 135);
        assert_eq!(GeneratorName::all_shapes().len(), 198);
    }

    #[test]
    fn identity_at_zero_angle() {
        let x = sample(1);
        for name in GeneratorName::all_shapes() {
            let y = build_generator(name).apply(&0.0, &x);
            assert!(distance(&x, &y) < 1e-14, "{name}");
        }
        let q = JordanElement::<Rational>::from_coords(&(0..27).map(|k| int(k as i64)).collect::<Vec<_>>());
        for name in GeneratorName::all_shapes() {
            assert_eq!(build_generator(name).apply(&int(0), &q), q, "{name}");
        }
    }

    #[test]
    fn tz_boost_scales_light_cone_coordinates() {
        let alpha = 0.7;
        let x = JordanElement::<f64>::diagonal([1.0, 1.0, 0.0]);
        let y = build_generator(GeneratorName::of(Kind::Btz, 1)).apply(&alpha, &x);
        // t + z = d1 and t − z = d2
        assert!((y.d[0] - alpha.exp()).abs() < 1e-12);
        assert!((y.d[1] - (-alpha).exp()).abs() < 1e-12);
        assert!(y.d[2].abs() < 1e-12);
    }

    #[test]
    fn full_turn_of_xz_rotation_flips_only_the_spinor() {
        let x = sample(2);
        let rxz = build_generator(GeneratorName::of(Kind::Rxz, 1));
        let y = rxz.apply(&(2.0 * PI), &x);
        // M(2π) = diag(−1, −1, 1): the vector block and corner are fixed,
        // the type-1 spinor changes sign.
        let (bx, by) = (x.type_blocks(1), y.type_blocks(1));
        assert!((bx.vector.a - by.vector.a).abs() < 1e-12);
        assert!((bx.vector.b - by.vector.b).abs() < 1e-12);
        assert!((bx.vector.off.clone() - by.vector.off.clone()).magnitude() < 1e-12);
        assert!((bx.corner - by.corner).abs() < 1e-12);
        for n in 0..2 {
            assert!((bx.spinor[n].clone() + by.spinor[n].clone()).magnitude() < 1e-12);
        }
        let z = rxz.apply(&(4.0 * PI), &x);
        assert!(distance(&x, &z) < 1e-12);
    }

    #[test]
    fn transverse_rotation_fixes_diagonal() {
        let x = sample(3);
        let y = build_generator(GeneratorName::of(Kind::Transverse(Unit::J, Unit::K), 1)).apply(&0.9, &x);
        for i in 0..3 {
            assert!((x.d[i] - y.d[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn both_parenthesizations_agree_for_every_shape() {
        for (n, name) in GeneratorName::all_shapes().into_iter().enumerate() {
            let action = build_generator(name);
            let x = sample(10 + n as u64);
            action.apply_checked(&0.83, &x, 1e-10).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn determinant_and_trace_preserved() {
        for (n, name) in GeneratorName::all_shapes().into_iter().enumerate() {
            let action = build_generator(name);
            for s in 0..5u64 {
                let x = sample(1000 + 7 * n as u64 + s);
                let alpha = 0.3 + 0.4 * s as f64;
                let y = action.apply(&alpha, &x);
                assert!((y.det() - x.det()).abs() < 1e-10, "{name} det");
                if !name.is_boost() {
                    assert!((y.trace() - x.trace()).abs() < 1e-10, "{name} trace");
                }
            }
        }
    }

    #[test]
    fn retype_cycles_back() {
        let action = build_generator(GeneratorName::of(Kind::Btq(Unit::JL), 1));
        let x = sample(5);
        let thrice = action.retype(2).retype(3).retype(1);
        assert_eq!(thrice, action);
        let y1 = action.apply(&0.4, &x);
        let y2 = action.retype(2).apply(&0.4, &x.cycle());
        assert!(distance(&y1.cycle(), &y2) < 1e-13);
    }

    #[test]
    fn permutation_conjugation_matches_cycle() {
        let t = type_permutation::<f64>();
        let x = sample(9);
        let literal = JordanElement::from_matrix(&t.mul(&x.to_matrix()).mul(&t.adjoint()));
        assert!(distance(&literal, &x.cycle()) < 1e-15);
        let t3 = t.mul(&t).mul(&t);
        assert!(t3.sub(&OctMatrix3::identity()).magnitude() < 1e-15);
    }

    #[test]
    fn type_permutation_identities_hold() {
        for (n, product) in type_permutation_products().iter().enumerate() {
            for s in 0..5 {
                let x = sample(200 + s);
                let y = compose(product, &x);
                assert!(distance(&y, &x.cycle()) < 1e-10, "identity {} sample {s}", n + 1);
            }
        }
    }

    #[test]
    fn type_independence_of_a_and_g() {
        for q in Unit::ALL {
            for kind in [Kind::A(q), Kind::G(q)] {
                let x = sample(31);
                let base = build_generator(GeneratorName::of(kind, 1)).apply(&0.61, &x);
                for a in 2..=3 {
                    let other = build_generator(GeneratorName::of(kind, a)).apply(&0.61, &x);
                    assert!(distance(&base, &other) < 1e-10, "{kind:?} type {a}");
                }
            }
        }
    }
}
