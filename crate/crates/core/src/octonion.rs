//! Octonions over a generic scalar ring.
//!
//! Basis order is `(1, i, j, k, kℓ, jℓ, iℓ, ℓ)`. The product of imaginary
//! units is generated from the 21 ordered quaternionic pairs listed per unit
//! below (`p·q = r` for every pair `(p, q)` in row `r`), extended by
//! anticommutativity and `q² = −1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Imaginary basis unit of the octonions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Unit {
    I,
    J,
    K,
    KL,
    JL,
    IL,
    L,
}

impl Unit {
    pub const ALL: [Unit; 7] = [Unit::I, Unit::J, Unit::K, Unit::KL, Unit::JL, Unit::IL, Unit::L];

    /// Index into the 8-component coefficient array.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(index: usize) -> Option<Unit> {
        index.checked_sub(1).and_then(|i| Unit::ALL.get(i).copied())
    }

    /// ASCII name, `ℓ` written as `l`.
    pub fn name(self) -> &'static str {
        match self {
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
            Unit::KL => "kl",
            Unit::JL => "jl",
            Unit::IL => "il",
            Unit::L => "l",
        }
    }

    pub fn parse(s: &str) -> Result<Unit> {
        Unit::ALL
            .into_iter()
            .find(|u| u.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown octonion unit {s:?}")))
    }

    /// The three ordered pairs `(p, q)` with `p·q = self`, in the order used to
    /// build the `A`, `G` and `S` combinations.
    pub fn quaternionic_pairs(self) -> [(Unit, Unit); 3] {
        use Unit::*;
        match self {
            I => [(J, K), (KL, JL), (L, IL)],
            J => [(K, I), (IL, KL), (L, JL)],
            K => [(I, J), (JL, IL), (L, KL)],
            KL => [(JL, I), (J, IL), (K, L)],
            JL => [(I, KL), (IL, K), (J, L)],
            IL => [(KL, J), (K, JL), (I, L)],
            L => [(IL, I), (JL, J), (KL, K)],
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signed permutation table: `e_a · e_b = sign · e_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    entries: [[(i8, u8); 8]; 8],
}

impl MultiplicationTable {
    /// Derives the full table from the quaternionic pairs, failing if two
    /// pairs imply different products for the same ordered pair of units.
    pub fn derive() -> Result<Self> {
        let mut entries = [[(0i8, 0u8); 8]; 8];
        for a in 0..8 {
            entries[0][a] = (1, a as u8);
            entries[a][0] = (1, a as u8);
        }
        for u in Unit::ALL {
            entries[u.index()][u.index()] = (-1, 0);
        }
        let mut assign = |a: usize, b: usize, value: (i8, u8)| -> Result<()> {
            let slot = &mut entries[a][b];
            if slot.0 != 0 && *slot != value {
                return Err(Error::Dependency(format!(
                    "inconsistent octonion product e{a}·e{b}"
                )));
            }
            *slot = value;
            Ok(())
        };
        for r in Unit::ALL {
            for (p, q) in r.quaternionic_pairs() {
                assign(p.index(), q.index(), (1, r.index() as u8))?;
                assign(q.index(), p.index(), (-1, r.index() as u8))?;
            }
        }
        if entries.iter().flatten().any(|e| e.0 == 0) {
            return Err(Error::Dependency("octonion table is incomplete".into()));
        }
        Ok(Self { entries })
    }

    pub fn global() -> &'static MultiplicationTable {
        static TABLE: OnceLock<MultiplicationTable> = OnceLock::new();
        TABLE.get_or_init(|| MultiplicationTable::derive().expect("octonion table is consistent"))
    }

    pub fn product(&self, a: usize, b: usize) -> (i8, usize) {
        let (s, i) = self.entries[a][b];
        (s, i as usize)
    }

    /// Human-readable 8×8 table, one row per left factor.
    pub fn render(&self) -> String {
        const NAMES: [&str; 8] = ["1", "i", "j", "k", "kl", "jl", "il", "l"];
        let mut out = String::new();
        out.push_str(&format!("{:>4}", "·"));
        for name in NAMES {
            out.push_str(&format!("{name:>5}"));
        }
        out.push('\n');
        for (a, row) in self.entries.iter().enumerate() {
            out.push_str(&format!("{:>4}", NAMES[a]));
            for &(s, i) in row {
                let sign = if s < 0 { "-" } else { "" };
                out.push_str(&format!("{:>5}", format!("{sign}{}", NAMES[i as usize])));
            }
            out.push('\n');
        }
        out
    }
}

/// An octonion `Σ c[a] e_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion<S> {
    pub c: [S; 8],
}

/// Subalgebras of the octonions singled out as the preferred reals, complex
/// numbers `⟨1, ℓ⟩` and quaternions `⟨1, k, kℓ, ℓ⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subfield {
    R,
    C,
    H,
}

impl Subfield {
    pub fn contains_index(self, index: usize) -> bool {
        match self {
            Subfield::R => index == 0,
            Subfield::C => matches!(index, 0 | 7),
            Subfield::H => matches!(index, 0 | 3 | 4 | 7),
        }
    }
}

impl<S: Scalar> Octonion<S> {
    pub fn new(c: [S; 8]) -> Self {
        Self { c }
    }

    pub fn real(r: S) -> Self {
        let mut c: [S; 8] = std::array::from_fn(|_| S::zero());
        c[0] = r;
        Self { c }
    }

    pub fn basis(index: usize) -> Self {
        let mut c: [S; 8] = std::array::from_fn(|_| S::zero());
        c[index] = S::one();
        Self { c }
    }

    pub fn unit(u: Unit) -> Self {
        Self::basis(u.index())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { c: std::array::from_fn(|a| self.c[a].clone() * s.clone()) }
    }

    pub fn conj(&self) -> Self {
        Self {
            c: std::array::from_fn(|a| {
                if a == 0 {
                    self.c[0].clone()
                } else {
                    -self.c[a].clone()
                }
            }),
        }
    }

    pub fn re(&self) -> S {
        self.c[0].clone()
    }

    pub fn norm2(&self) -> S {
        self.c.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|a| f(&self.c[a])) }
    }

    pub fn in_subfield(&self, which: Subfield) -> bool {
        self.c
            .iter()
            .enumerate()
            .all(|(a, x)| which.contains_index(a) || x.is_zero())
    }

    pub fn magnitude(&self) -> f64 {
        self.c.iter().map(Scalar::magnitude).sum()
    }
}

pub fn oct_mul<S: Scalar>(a: &Octonion<S>, b: &Octonion<S>) -> Octonion<S> {
    let table = MultiplicationTable::global();
    let mut out: [S; 8] = std::array::from_fn(|_| S::zero());
    for (x, ax) in a.c.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.c.iter().enumerate() {
            if by.is_zero() {
                continue;
            }
            let (sign, z) = table.product(x, y);
            let term = ax.clone() * by.clone();
            out[z] = if sign > 0 {
                out[z].clone() + term
            } else {
                out[z].clone() - term
            };
        }
    }
    Octonion { c: out }
}

/// `(ab)c − a(bc)`.
pub fn associator<S: Scalar>(a: &Octonion<S>, b: &Octonion<S>, c: &Octonion<S>) -> Octonion<S> {
    oct_mul(&oct_mul(a, b), c) - oct_mul(a, &oct_mul(b, c))
}

pub fn subalgebra_membership<S: Scalar>(a: &Octonion<S>, which: Subfield) -> bool {
    a.in_subfield(which)
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3, a4, a5, a6, a7] = self.c;
        let [b0, b1, b2, b3, b4, b5, b6, b7] = rhs.c;
        Self {
            c: [a0 + b0, a1 + b1, a2 + b2, a3 + b3, a4 + b4, a5 + b5, a6 + b6, a7 + b7],
        }
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: self.c.map(|x| -x) }
    }
}

impl<S: Scalar> Mul for &Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, rhs: Self) -> Octonion<S> {
        oct_mul(self, rhs)
    }
}

impl<S: Scalar> Zero for Octonion<S> {
    fn zero() -> Self {
        Self { c: std::array::from_fn(|_| S::zero()) }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl<S: Scalar> One for Octonion<S> {
    fn one() -> Self {
        Self::real(S::one())
    }
}

impl<S: Scalar> Mul for Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, rhs: Self) -> Octonion<S> {
        oct_mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, Rational};
    use proptest::prelude::*;

    type Q = Octonion<Rational>;

    fn u(x: Unit) -> Q {
        Q::unit(x)
    }

    #[test]
    fn table_is_consistent_and_complete() {
        MultiplicationTable::derive().unwrap();
    }

    #[test]
    fn listed_products() {
        assert_eq!(&u(Unit::I) * &u(Unit::J), u(Unit::K));
        assert_eq!(&u(Unit::IL) * &u(Unit::I), u(Unit::L));
        assert_eq!(&u(Unit::K) * &u(Unit::L), u(Unit::KL));
        let x = Q::new(std::array::from_fn(|a| rat(a as i64 - 3, 2)));
        assert_eq!(&Q::one() * &x, x);
        assert_eq!(&x * &Q::one(), x);
    }

    #[test]
    fn imaginary_units_square_to_minus_one_and_anticommute() {
        for p in Unit::ALL {
            assert_eq!(&u(p) * &u(p), -Q::one());
            for q in Unit::ALL {
                if p != q {
                    assert_eq!(&u(p) * &u(q), -(&u(q) * &u(p)));
                }
            }
        }
    }

    #[test]
    fn every_pair_generates_a_quaternion_triple() {
        for r in Unit::ALL {
            for (p, q) in r.quaternionic_pairs() {
                // p·q = r implies q·r = p and r·p = q
                assert_eq!(&u(q) * &u(r), u(p));
                assert_eq!(&u(r) * &u(p), u(q));
            }
        }
    }

    #[test]
    fn conj_real_norm() {
        assert_eq!(u(Unit::I).conj(), -u(Unit::I));
        assert_eq!((u(Unit::I) + u(Unit::L)).norm2(), int(2));
        assert_eq!((&u(Unit::IL) * &u(Unit::I)).re(), int(0));
    }

    #[test]
    fn associator_examples() {
        assert!(associator(&u(Unit::I), &u(Unit::J), &u(Unit::K)).is_zero());
        assert!(!associator(&u(Unit::I), &u(Unit::J), &u(Unit::L)).is_zero());
    }

    #[test]
    fn alternativity_on_basis() {
        for a in 0..8 {
            for b in 0..8 {
                let (x, y) = (Q::basis(a), Q::basis(b));
                assert!(associator(&x, &x, &y).is_zero());
                assert!(associator(&x, &y, &y).is_zero());
            }
        }
    }

    #[test]
    fn membership() {
        assert!(subalgebra_membership(&(u(Unit::K) + u(Unit::L)), Subfield::H));
        assert!(!subalgebra_membership(&u(Unit::I), Subfield::H));
        assert!(subalgebra_membership(&Q::one(), Subfield::R));
        assert!(!subalgebra_membership(&u(Unit::K), Subfield::C));
    }

    #[test]
    fn preferred_subalgebras_are_closed() {
        for (field, idx) in [(Subfield::H, vec![0, 3, 4, 7]), (Subfield::C, vec![0, 7])] {
            for &a in &idx {
                for &b in &idx {
                    assert!((&Q::basis(a) * &Q::basis(b)).in_subfield(field));
                }
            }
        }
    }

    fn octonion() -> impl Strategy<Value = Q> {
        prop::array::uniform8((-9i64..9, 1i64..5)).prop_map(|c| Q::new(c.map(|(n, d)| rat(n, d))))
    }

    proptest! {
        #[test]
        fn composition_property(a in octonion(), b in octonion()) {
            prop_assert_eq!((&a * &b).norm2(), a.norm2() * b.norm2());
        }

        #[test]
        fn alternativity(a in octonion(), b in octonion()) {
            prop_assert!(associator(&a, &a, &b).is_zero());
            prop_assert!(associator(&a, &b, &a).is_zero());
            prop_assert!(associator(&b, &a, &a).is_zero());
        }

        #[test]
        fn conjugation_is_an_anti_automorphism(a in octonion(), b in octonion()) {
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
            prop_assert_eq!((&a * &a.conj()).c[1..].iter().all(|x| x == &int(0)), true);
        }
    }
}
