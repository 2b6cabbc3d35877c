//! Lie algebra elements as exact 27×27 rational matrices, extracted from the
//! group actions by second-order jets, and the curve commutator.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jordan::{JordanElement, DIM};
use crate::linalg::QMatrix;
use crate::scalars::{rat, Jet2, Rational};
use crate::transforms::{build_generator, GeneratorName, GroupAction};

/// Linear map `𝒳 ↦ ∂R(α)(𝒳)/∂α` at `α = 0` in the 27 Jordan coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentMap {
    pub m: QMatrix,
    pub label: String,
}

impl TangentMap {
    pub fn new(m: QMatrix, label: impl Into<String>) -> Self {
        assert_eq!((m.rows(), m.cols()), (DIM, DIM), "tangent maps are 27×27");
        Self { m, label: label.into() }
    }

    pub fn zero() -> Self {
        Self::new(QMatrix::zeros(DIM, DIM), "0")
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Entries flattened row-major, the tangent as a vector of ℚ^729.
    pub fn flatten(&self) -> Vec<Rational> {
        self.m.as_slice().to_vec()
    }

    pub fn from_flat(v: &[Rational], label: impl Into<String>) -> Self {
        let rows: Vec<Vec<Rational>> = v.chunks(DIM).map(<[Rational]>::to_vec).collect();
        Self::new(QMatrix::from_rows(&rows), label)
    }

    pub fn apply(&self, x: &JordanElement<Rational>) -> JordanElement<Rational> {
        JordanElement::from_coords(&self.m.mat_vec(&x.coords()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.m.scale(c), format!("({c})*{}", self.label))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.m + &other.m, format!("{}+{}", self.label, other.label))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.m - &other.m, format!("{}-{}", self.label, other.label))
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The trace functional `d1+d2+d3` vanishes on the image.
    pub fn annihilates_trace(&self) -> bool {
        (0..DIM).all(|c| (0..3).fold(Rational::zero(), |acc, r| acc + &self.m[(r, c)]).is_zero())
    }

    /// `d/dt det(𝒳 + t·L𝒳)` at `t = 0`, exactly.
    pub fn det_derivative(&self, x: &JordanElement<Rational>) -> Rational {
        let lx = self.m.mat_vec(&x.coords());
        let jet: Vec<Jet2<Rational>> = x
            .coords()
            .into_iter()
            .zip(lx)
            .map(|(a, b)| Jet2::new(a, b, Rational::zero()))
            .collect();
        JordanElement::from_coords(&jet).det().f1
    }
}

impl fmt::Display for TangentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// First and second derivatives at `α = 0` of the 27×27 matrix of `R(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveJet {
    pub name: GeneratorName,
    pub first: QMatrix,
    pub second: QMatrix,
}

impl CurveJet {
    pub fn of(name: GeneratorName) -> Self {
        Self::of_action(&build_generator(name))
    }

    pub fn of_action(action: &GroupAction) -> Self {
        let alpha = Jet2::<Rational>::variable();
        let mut first = QMatrix::zeros(DIM, DIM);
        let mut second = QMatrix::zeros(DIM, DIM);
        for k in 0..DIM {
            let image = action.apply(&alpha, &JordanElement::<Jet2<Rational>>::basis(k));
            for (r, c) in image.coords().into_iter().enumerate() {
                first[(r, k)] = c.f1;
                second[(r, k)] = c.f2;
            }
        }
        Self { name: action.name, first, second }
    }

    pub fn tangent(&self) -> TangentMap {
        TangentMap::new(self.first.clone(), self.name.to_string())
    }

    /// Jet in `α` of the matrix of `R(c·α)`.
    fn rescaled(&self, c: &Rational) -> MatrixJet {
        MatrixJet {
            f0: QMatrix::identity(DIM),
            f1: self.first.scale(c),
            f2: self.second.scale(&(c * c)),
        }
    }
}

/// Second-order jet of a matrix-valued curve.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MatrixJet {
    f0: QMatrix,
    f1: QMatrix,
    f2: QMatrix,
}

impl MatrixJet {
    /// Jet of the product curve (Leibniz rule).
    fn mul(&self, rhs: &Self) -> Self {
        let two = Rational::from_integer(2.into());
        Self {
            f0: self.f0.matmul(&rhs.f0),
            f1: &self.f0.matmul(&rhs.f1) + &self.f1.matmul(&rhs.f0),
            f2: &(&self.f0.matmul(&rhs.f2) + &self.f1.matmul(&rhs.f1).scale(&two)) + &self.f2.matmul(&rhs.f0),
        }
    }
}

pub fn tangent_of(name: GeneratorName) -> TangentMap {
    CurveJet::of(name).tangent()
}

/// Tangents of many generators, computed in parallel, in input order.
pub fn tangents_of(names: &[GeneratorName]) -> Vec<TangentMap> {
    curve_jets(names).into_iter().map(|j| j.tangent()).collect()
}

pub fn curve_jets(names: &[GeneratorName]) -> Vec<CurveJet> {
    names.par_iter().map(|&n| CurveJet::of(n)).collect()
}

pub fn matrix_commutator(l1: &TangentMap, l2: &TangentMap) -> TangentMap {
    TangentMap::new(l1.m.commutator(&l2.m), format!("[{},{}]", l1.label, l2.label))
}

/// Result of composing `R₁(α/2)∘R₂(α/2)∘R₁(−α/2)∘R₂(−α/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCommutator {
    /// First derivative at `α = 0`; zero for any pair.
    pub first: QMatrix,
    /// Half the second derivative at `α = 0`.
    pub value: TangentMap,
}

/// The curve commutator of two elementary generators from their jets.
pub fn curve_commutator_from_jets(j1: &CurveJet, j2: &CurveJet) -> CurveCommutator {
    let half = rat(1, 2);
    let factors = [j1.rescaled(&half), j2.rescaled(&half), j1.rescaled(&-&half), j2.rescaled(&-&half)];
    let product = factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.mul(f));
    CurveCommutator {
        first: product.f1,
        value: TangentMap::new(product.f2.scale(&half), format!("[{},{}]~", j1.name, j2.name)),
    }
}

pub fn curve_commutator(r1: GeneratorName, r2: GeneratorName) -> Result<CurveCommutator> {
    for r in [r1, r2] {
        if !r.kind.is_elementary() {
            return Err(Error::InvalidGenerator(format!(
                "curve commutator is defined for elementary generators only, got {r}"
            )));
        }
    }
    Ok(curve_commutator_from_jets(&CurveJet::of(r1), &CurveJet::of(r2)))
}

/// How one matrix relates to another by a scalar factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportion {
    BothZero,
    Ratio(Rational),
    NotProportional,
}

/// Finds `κ` with `a = κ·b`.
pub fn proportion(a: &QMatrix, b: &QMatrix) -> Proportion {
    let pair = a.as_slice().iter().zip(b.as_slice()).find(|(_, y)| !y.is_zero());
    let Some((x, y)) = pair else {
        return if a.is_zero() { Proportion::BothZero } else { Proportion::NotProportional };
    };
    let kappa = x / y;
    if &b.scale(&kappa) == a {
        Proportion::Ratio(kappa)
    } else {
        Proportion::NotProportional
    }
}

/// Outcome of checking `curve_commutator = κ·matrix_commutator` over pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaReport {
    pub kappa: Rational,
    pub pairs: usize,
    /// Pairs where the identity fails or the first jet is non-zero.
    pub failures: Vec<(GeneratorName, GeneratorName)>,
}

/// Measures `κ` on `(B¹tz, B¹tx)` and checks it on every pair of the given
/// elementary generators.
pub fn check_kappa(names: &[GeneratorName]) -> Result<KappaReport> {
    use crate::transforms::Kind;
    let reference = curve_commutator(GeneratorName::of(Kind::Btz, 1), GeneratorName::of(Kind::Btx, 1))?;
    let bracket = matrix_commutator(&tangent_of(GeneratorName::of(Kind::Btz, 1)), &tangent_of(GeneratorName::of(Kind::Btx, 1)));
    let Proportion::Ratio(kappa) = proportion(&reference.value.m, &bracket.m) else {
        return Err(Error::Dependency("curve commutator of B1_tz, B1_tx is not proportional to the bracket".into()));
    };
    if names.iter().any(|n| !n.kind.is_elementary()) {
        return Err(Error::InvalidGenerator("κ is only checked on elementary generators".into()));
    }
    let jets = curve_jets(names);
    let pairs: Vec<(usize, usize)> = (0..jets.len()).flat_map(|i| (i + 1..jets.len()).map(move |j| (i, j))).collect();
    let mut failures: Vec<(GeneratorName, GeneratorName)> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let curve = curve_commutator_from_jets(&jets[i], &jets[j]);
            let expected = jets[i].first.commutator(&jets[j].first).scale(&kappa);
            (!curve.first.is_zero() || curve.value.m != expected).then_some((jets[i].name, jets[j].name))
        })
        .collect();
    failures.sort();
    Ok(KappaReport { kappa, pairs: pairs.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::Unit;
    use crate::scalars::int;
    use crate::transforms::{compose, Kind};
    use proptest::prelude::*;

    fn g(kind: Kind, a: u8) -> GeneratorName {
        GeneratorName::of(kind, a)
    }

    /// Literal route: apply the four actions to jet-valued elements.
    fn literal_curve_commutator(r1: GeneratorName, r2: GeneratorName) -> (QMatrix, QMatrix) {
        let half = Jet2::new(Rational::zero(), rat(1, 2), Rational::zero());
        let minus = Jet2::new(Rational::zero(), rat(-1, 2), Rational::zero());
        let mut first = QMatrix::zeros(DIM, DIM);
        let mut second = QMatrix::zeros(DIM, DIM);
        for k in 0..DIM {
            let x = JordanElement::<Jet2<Rational>>::basis(k);
            let y = compose(&[(r1, half.clone()), (r2, half.clone()), (r1, minus.clone()), (r2, minus.clone())], &x);
            for (r, c) in y.coords().into_iter().enumerate() {
                first[(r, k)] = c.f1;
                second[(r, k)] = c.f2 * rat(1, 2);
            }
        }
        (first, second)
    }

    #[test]
    fn tz_boost_tangent() {
        let l = tangent_of(g(Kind::Btz, 1));
        let image = l.apply(&JordanElement::diagonal([int(1), int(0), int(0)]));
        assert_eq!(image.d[0], int(1));
        assert!(l.apply(&JordanElement::zero()).coords().iter().all(Zero::is_zero));
    }

    #[test]
    fn a_tangent_is_difference_of_planes() {
        let a = tangent_of(g(Kind::A(Unit::I), 1));
        let r1 = tangent_of(g(Kind::Transverse(Unit::J, Unit::K), 1));
        let r2 = tangent_of(g(Kind::Transverse(Unit::KL, Unit::JL), 1));
        assert_eq!(a.m, r1.sub(&r2).m);
    }

    #[test]
    fn self_bracket_vanishes() {
        let l = tangent_of(g(Kind::Rzq(Unit::J), 2));
        assert!(matrix_commutator(&l, &l).is_zero());
        let c = curve_commutator(g(Kind::Rxz, 1), g(Kind::Rxz, 1)).unwrap();
        assert!(c.value.is_zero() && c.first.is_zero());
    }

    #[test]
    fn composites_rejected_by_curve_commutator() {
        assert!(curve_commutator(g(Kind::A(Unit::I), 1), g(Kind::Btz, 1)).is_err());
    }

    #[test]
    fn kappa_is_one_quarter_on_reference_pair() {
        let c = curve_commutator(g(Kind::Btz, 1), g(Kind::Btx, 1)).unwrap();
        let b = matrix_commutator(&tangent_of(g(Kind::Btz, 1)), &tangent_of(g(Kind::Btx, 1)));
        assert!(!b.is_zero());
        assert_eq!(proportion(&c.value.m, &b.m), Proportion::Ratio(rat(1, 4)));
    }

    #[test]
    fn jet_composition_matches_literal_composition() {
        let pairs = [
            (g(Kind::Btz, 1), g(Kind::Btx, 1)),
            (g(Kind::Rxq(Unit::KL), 2), g(Kind::Btq(Unit::L), 3)),
            (g(Kind::Transverse(Unit::I, Unit::J), 1), g(Kind::Rzq(Unit::IL), 1)),
            (g(Kind::Transverse(Unit::K, Unit::JL), 3), g(Kind::Transverse(Unit::I, Unit::L), 2)),
        ];
        for (r1, r2) in pairs {
            let fast = curve_commutator(r1, r2).unwrap();
            let (first, second) = literal_curve_commutator(r1, r2);
            assert!(first.is_zero(), "{r1} {r2}");
            assert_eq!(fast.value.m, second, "{r1} {r2}");
        }
    }

    #[test]
    fn rotations_annihilate_trace() {
        for name in GeneratorName::all_shapes() {
            let l = tangent_of(name);
            assert_eq!(l.annihilates_trace(), !name.is_boost(), "{name}");
        }
    }

    #[test]
    fn cartan_pair_commutes() {
        let a = tangent_of(g(Kind::A(Unit::L), 1));
        let gl = tangent_of(g(Kind::G(Unit::L), 1));
        assert!(matrix_commutator(&a, &gl).is_zero());
    }

    fn rational_element() -> impl Strategy<Value = JordanElement<Rational>> {
        prop::collection::vec((-5i64..6, 1i64..4), DIM)
            .prop_map(|v| JordanElement::from_coords(&v.into_iter().map(|(n, d)| rat(n, d)).collect::<Vec<_>>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]

        #[test]
        fn every_tangent_preserves_det_infinitesimally(x in rational_element()) {
            for name in GeneratorName::all_shapes().into_iter().step_by(5) {
                prop_assert!(tangent_of(name).det_derivative(&x).is_zero(), "{}", name);
            }
        }
    }
}
