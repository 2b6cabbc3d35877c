//! Scalar rings used throughout the crate.
//!
//! Everything geometric is written once against [`Scalar`] and evaluated over
//! three rings: `f64` for finite-angle group checks, [`Rational`] for exact
//! algebra, and [`Jet2`] for exact first and second derivatives at the
//! identity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Builds `num/den` as a reduced rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
}

/// A commutative ring with enough structure to host octonions and Jordan
/// matrices.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&rat(num, den))
    }

    /// Non-negative size used for tolerance comparisons; exact rings report
    /// zero only for exact zero.
    fn magnitude(&self) -> f64;
}

/// Scalars on which the elementary functions of a rotation angle can be
/// evaluated.
pub trait Analytic: Scalar {
    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    fn cosh(&self) -> Self;
    fn sinh(&self) -> Self;
    fn exp(&self) -> Self;
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_rational(r: &Rational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $f
            }

            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
        }

        impl Analytic for $f {
            fn cos(&self) -> Self {
                <$f>::cos(*self)
            }
            fn sin(&self) -> Self {
                <$f>::sin(*self)
            }
            fn cosh(&self) -> Self {
                <$f>::cosh(*self)
            }
            fn sinh(&self) -> Self {
                <$f>::sinh(*self)
            }
            fn exp(&self) -> Self {
                <$f>::exp(*self)
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Elementary functions are transcendental at every non-zero rational, so
/// the exact ring only evaluates them at zero. This is all that jets at the
/// identity ever request.
impl Analytic for Rational {
    fn cos(&self) -> Self {
        assert!(self.is_zero(), "cos is not rational at {self}");
        Rational::one()
    }
    fn sin(&self) -> Self {
        assert!(self.is_zero(), "sin is not rational at {self}");
        Rational::zero()
    }
    fn cosh(&self) -> Self {
        assert!(self.is_zero(), "cosh is not rational at {self}");
        Rational::one()
    }
    fn sinh(&self) -> Self {
        assert!(self.is_zero(), "sinh is not rational at {self}");
        Rational::zero()
    }
    fn exp(&self) -> Self {
        assert!(self.is_zero(), "exp is not rational at {self}");
        Rational::one()
    }
}

/// Second-order truncated Taylor expansion `f0 + f1·α + f2·α²/2`.
///
/// `f1` and `f2` are the first and second derivatives with respect to the
/// curve parameter, so `(0, 1, 0)` is the parameter itself and its square is
/// `(0, 0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet2<S> {
    pub f0: S,
    pub f1: S,
    pub f2: S,
}

impl<S: Scalar> Jet2<S> {
    pub fn new(f0: S, f1: S, f2: S) -> Self {
        Self { f0, f1, f2 }
    }

    pub fn constant(f0: S) -> Self {
        Self::new(f0, S::zero(), S::zero())
    }

    /// The curve parameter `α` itself.
    pub fn variable() -> Self {
        Self::new(S::zero(), S::one(), S::zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(
            self.f0.clone() * c.clone(),
            self.f1.clone() * c.clone(),
            self.f2.clone() * c.clone(),
        )
    }

    /// Composes an analytic `f` with this jet given `(f, f', f'')` at `f0`.
    fn compose(&self, d0: S, d1: S, d2: S) -> Self {
        let g1 = self.f1.clone();
        let g2 = self.f2.clone();
        Self::new(
            d0,
            d1.clone() * g1.clone(),
            d2 * g1.clone() * g1 + d1 * g2,
        )
    }
}

impl<S: Scalar> Add for Jet2<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.f0 + rhs.f0, self.f1 + rhs.f1, self.f2 + rhs.f2)
    }
}

impl<S: Scalar> Sub for Jet2<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.f0 - rhs.f0, self.f1 - rhs.f1, self.f2 - rhs.f2)
    }
}

impl<S: Scalar> Neg for Jet2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.f0, -self.f1, -self.f2)
    }
}

impl<S: Scalar> Mul for Jet2<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // Leibniz: (fg)'' = f''g + 2f'g' + fg''
        let two = S::one() + S::one();
        let f2 = self.f0.clone() * rhs.f2.clone()
            + two * self.f1.clone() * rhs.f1.clone()
            + self.f2 * rhs.f0.clone();
        let f1 = self.f0.clone() * rhs.f1 + self.f1 * rhs.f0.clone();
        Self::new(self.f0 * rhs.f0, f1, f2)
    }
}

impl<S: Scalar> Zero for Jet2<S> {
    fn zero() -> Self {
        Self::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f1.is_zero() && self.f2.is_zero()
    }
}

impl<S: Scalar> One for Jet2<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> Scalar for Jet2<S> {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(S::from_rational(r))
    }

    fn magnitude(&self) -> f64 {
        self.f0.magnitude() + self.f1.magnitude() + self.f2.magnitude()
    }
}

impl<S: Analytic> Analytic for Jet2<S> {
    fn cos(&self) -> Self {
        let (c, s) = (self.f0.cos(), self.f0.sin());
        self.compose(c.clone(), -s, -c)
    }
    fn sin(&self) -> Self {
        let (c, s) = (self.f0.cos(), self.f0.sin());
        self.compose(s.clone(), c, -s)
    }
    fn cosh(&self) -> Self {
        let (c, s) = (self.f0.cosh(), self.f0.sinh());
        self.compose(c.clone(), s, c)
    }
    fn sinh(&self) -> Self {
        let (c, s) = (self.f0.cosh(), self.f0.sinh());
        self.compose(s.clone(), c, s)
    }
    fn exp(&self) -> Self {
        let e = self.f0.exp();
        self.compose(e.clone(), e.clone(), e)
    }
}

impl<S: fmt::Display> fmt::Display for Jet2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.f0, self.f1, self.f2)
    }
}

/// The functions appearing in the finite Lorentz transformation matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    Cos,
    Sin,
    Cosh,
    Sinh,
    Exp,
}

impl Elementary {
    pub fn eval<S: Analytic>(self, x: &S) -> S {
        match self {
            Elementary::Cos => x.cos(),
            Elementary::Sin => x.sin(),
            Elementary::Cosh => x.cosh(),
            Elementary::Sinh => x.sinh(),
            Elementary::Exp => x.exp(),
        }
    }
}

/// The exact 2-jet of `α ↦ f(c·α)` at `α = 0`.
pub fn jet_elementary(kind: Elementary, c: &Rational) -> Jet2<Rational> {
    kind.eval(&Jet2::<Rational>::variable().scale(c))
}
