//! The exceptional Jordan algebra of 3×3 octonionic Hermitian matrices.
//!
//! An element is stored as three real diagonal entries and three octonions,
//! `x_i` sitting opposite `d_i`:
//!
//! ```text
//!     ⎛ d1   x3   x̄2 ⎞
//!     ⎜ x̄3   d2   x1 ⎟
//!     ⎝ x2   x̄1   d3 ⎠
//! ```
//!
//! With this layout conjugation by the cyclic permutation matrix `𝒯` is a
//! plain cyclic shift of `(d1, d2, d3)` and `(x1, x2, x3)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::{oct_mul, Octonion};
use crate::scalars::{format_rational, parse_rational, Rational, Scalar};

/// Number of real coordinates of a Jordan element.
pub const DIM: usize = 27;

#[derive(Clone, Debug, PartialEq)]
pub struct JordanElement<S> {
    pub d: [S; 3],
    pub x: [Octonion<S>; 3],
}

impl<S: Scalar> JordanElement<S> {
    pub fn new(d: [S; 3], x: [Octonion<S>; 3]) -> Self {
        Self { d, x }
    }

    pub fn zero() -> Self {
        Self::diagonal([S::zero(), S::zero(), S::zero()])
    }

    pub fn identity() -> Self {
        Self::diagonal([S::one(), S::one(), S::one()])
    }

    pub fn diagonal(d: [S; 3]) -> Self {
        Self { d, x: std::array::from_fn(|_| num_traits::Zero::zero()) }
    }

    /// The `k`-th coordinate basis element, `k < 27`.
    pub fn basis(k: usize) -> Self {
        let mut v = vec![S::zero(); DIM];
        v[k] = S::one();
        Self::from_coords(&v)
    }

    /// Coordinates `(d1, d2, d3, x1[0..8], x2[0..8], x3[0..8])`.
    pub fn coords(&self) -> Vec<S> {
        let mut v = Vec::with_capacity(DIM);
        v.extend(self.d.iter().cloned());
        for o in &self.x {
            v.extend(o.c.iter().cloned());
        }
        v
    }

    pub fn from_coords(v: &[S]) -> Self {
        assert_eq!(v.len(), DIM, "a Jordan element has 27 coordinates");
        Self {
            d: std::array::from_fn(|i| v[i].clone()),
            x: std::array::from_fn(|i| Octonion::new(std::array::from_fn(|a| v[3 + 8 * i + a].clone()))),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> JordanElement<T> {
        JordanElement {
            d: std::array::from_fn(|i| f(&self.d[i])),
            x: std::array::from_fn(|i| self.x[i].map(&f)),
        }
    }

    pub fn trace(&self) -> S {
        self.d[0].clone() + self.d[1].clone() + self.d[2].clone()
    }

    /// Freudenthal cubic form
    /// `d1 d2 d3 − d1|x1|² − d2|x2|² − d3|x3|² + 2 Re((x1 x2) x3)`.
    pub fn det(&self) -> S {
        let [d1, d2, d3] = self.d.clone();
        let [x1, x2, x3] = &self.x;
        let triple = oct_mul(&oct_mul(x1, x2), x3).re();
        d1.clone() * d2.clone() * d3.clone() - d1 * x1.norm2() - d2 * x2.norm2() - d3 * x3.norm2()
            + triple.clone()
            + triple
    }

    /// `𝒯 X 𝒯†`, the shift carrying type-1 blocks to type-2 blocks.
    pub fn cycle(&self) -> Self {
        let [d1, d2, d3] = self.d.clone();
        let [x1, x2, x3] = self.x.clone();
        Self { d: [d3, d1, d2], x: [x3, x1, x2] }
    }

    /// `𝒯† X 𝒯`.
    pub fn uncycle(&self) -> Self {
        let [d1, d2, d3] = self.d.clone();
        let [x1, x2, x3] = self.x.clone();
        Self { d: [d2, d3, d1], x: [x2, x3, x1] }
    }

    /// Applies [`cycle`](Self::cycle) `n` times (mod 3).
    pub fn cycled(&self, n: usize) -> Self {
        match n % 3 {
            0 => self.clone(),
            1 => self.cycle(),
            _ => self.uncycle(),
        }
    }

    pub fn to_matrix(&self) -> OctMatrix3<S> {
        let [d1, d2, d3] = self.d.clone();
        let [x1, x2, x3] = self.x.clone();
        OctMatrix3 {
            e: [
                [Octonion::real(d1), x3.clone(), x2.conj()],
                [x3.conj(), Octonion::real(d2), x1.clone()],
                [x2, x1.conj(), Octonion::real(d3)],
            ],
        }
    }

    /// Reads the Hermitian part of `m` (diagonal real parts and the upper
    /// off-diagonal entries).
    pub fn from_matrix(m: &OctMatrix3<S>) -> Self {
        Self {
            d: std::array::from_fn(|i| m.e[i][i].re()),
            x: [m.e[1][2].clone(), m.e[2][0].clone(), m.e[0][1].clone()],
        }
    }

    pub fn jordan_product(&self, other: &Self) -> Self {
        let (a, b) = (self.to_matrix(), other.to_matrix());
        let sum = a.mul(&b).add(&b.mul(&a));
        Self::from_matrix(&sum).scale(&S::from_ratio(1, 2))
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let v: Vec<S> = self
            .coords()
            .into_iter()
            .zip(other.coords())
            .map(|(a, b)| a + b)
            .collect();
        Self::from_coords(&v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Sum of coordinate magnitudes.
    pub fn magnitude(&self) -> f64 {
        self.coords().iter().map(Scalar::magnitude).sum()
    }

    /// Splits the element into the 2×2 vector block, spinor and corner of
    /// the given type (1, 2 or 3).
    pub fn type_blocks(&self, type_index: usize) -> TypeBlocks<S> {
        assert!((1..=3).contains(&type_index), "type index must be 1, 2 or 3");
        let y = self.cycled(3 - (type_index - 1) % 3);
        let [d1, d2, d3] = y.d;
        let [x1, x2, x3] = y.x;
        TypeBlocks {
            vector: VectorBlock { a: d1, b: d2, off: x3 },
            spinor: [x2.conj(), x1],
            corner: d3,
        }
    }

    /// Coordinate indices of the type-`a` vector block.
    pub fn vector_block_coords(type_index: usize) -> [usize; 10] {
        let (da, db, x) = match type_index {
            1 => (0, 1, 2),
            2 => (1, 2, 0),
            3 => (2, 0, 1),
            _ => panic!("type index must be 1, 2 or 3"),
        };
        let base = 3 + 8 * x;
        [da, db, base, base + 1, base + 2, base + 3, base + 4, base + 5, base + 6, base + 7]
    }
}

/// Hermitian 2×2 block `[[a, off], [off̄, b]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorBlock<S> {
    pub a: S,
    pub b: S,
    pub off: Octonion<S>,
}

impl<S: Scalar> VectorBlock<S> {
    /// Lorentzian norm `ab − |off|²`.
    pub fn det(&self) -> S {
        self.a.clone() * self.b.clone() - self.off.norm2()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeBlocks<S> {
    pub vector: VectorBlock<S>,
    pub spinor: [Octonion<S>; 2],
    pub corner: S,
}

/// Plain 3×3 matrix of octonions. Products are evaluated entrywise with the
/// octonion product; no associativity is assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct OctMatrix3<S> {
    pub e: [[Octonion<S>; 3]; 3],
}

impl<S: Scalar> OctMatrix3<S> {
    pub fn zero() -> Self {
        Self { e: std::array::from_fn(|_| std::array::from_fn(|_| num_traits::Zero::zero())) }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.e[i][i] = Octonion::real(S::one());
        }
        m
    }

    /// Real permutation matrix with ones at `(row, perm[row])`.
    pub fn permutation(perm: [usize; 3]) -> Self {
        let mut m = Self::zero();
        for (row, &col) in perm.iter().enumerate() {
            m.e[row][col] = Octonion::real(S::one());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc: Octonion<S> = num_traits::Zero::zero();
                for k in 0..3 {
                    let (a, b) = (&self.e[i][k], &other.e[k][j]);
                    if num_traits::Zero::is_zero(a) || num_traits::Zero::is_zero(b) {
                        continue;
                    }
                    acc = acc + oct_mul(a, b);
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = out.e[i][j].clone() + other.e[i][j].clone();
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = out.e[i][j].clone() - other.e[i][j].clone();
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].conj())) }
    }

    pub fn magnitude(&self) -> f64 {
        self.e.iter().flatten().map(Octonion::magnitude).sum()
    }

    /// Size of the anti-Hermitian part: imaginary diagonal components and
    /// mismatched off-diagonal pairs.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).magnitude()
    }
}

#[derive(Serialize, Deserialize)]
struct JordanJson {
    d: Vec<String>,
    x1: Vec<String>,
    x2: Vec<String>,
    x3: Vec<String>,
}

impl JordanElement<Rational> {
    /// `{"d": [...], "x1": [8], "x2": [8], "x3": [8]}` with rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let oct = |o: &Octonion<Rational>| o.c.iter().map(format_rational).collect();
        serde_json::to_value(JordanJson {
            d: self.d.iter().map(format_rational).collect(),
            x1: oct(&self.x[0]),
            x2: oct(&self.x[1]),
            x3: oct(&self.x[2]),
        })
        .expect("plain struct serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: JordanJson = serde_json::from_value(value.clone())?;
        let parse_n = |v: &[String], n: usize| -> Result<Vec<Rational>> {
            if v.len() != n {
                return Err(Error::Parse(format!("expected {n} entries, found {}", v.len())));
            }
            v.iter().map(|s| parse_rational(s)).collect()
        };
        let d = parse_n(&raw.d, 3)?;
        let mut coords = d;
        for x in [&raw.x1, &raw.x2, &raw.x3] {
            coords.extend(parse_n(x, 8)?);
        }
        Ok(Self::from_coords(&coords))
    }
}
