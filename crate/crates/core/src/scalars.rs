//! Exact scalars.
//!
//! [`GaussRat`] is the coefficient field of every form and matrix in the
//! crate: complex numbers with arbitrary-precision rational real and
//! imaginary parts. [`FormalReal`] holds the real numbers that appear as
//! lattice coordinates: a rational part, a rational multiple of π and a
//! rational combination of named symbols. The constant `1`, `π` and the
//! symbols are treated as linearly independent over ℚ, which makes
//! membership in `2πℤ` decidable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;

/// Shorthand for building a rational from two machine integers.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<BigRational> for GaussRat {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

/// A real number of the form `q₀ + q₁·π + Σ q_s·s` over declared symbols `s`.
///
/// Components with zero coefficient are never stored, so derived equality is
/// componentwise equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FormalReal {
    constant: BigRational,
    pi: BigRational,
    symbols: BTreeMap<String, BigRational>,
}

impl FormalReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: BigRational) -> Self {
        Self { constant: q, ..Self::default() }
    }

    /// `q·π`
    pub fn pi(q: BigRational) -> Self {
        Self { pi: q, ..Self::default() }
    }

    /// `q·name`
    pub fn symbol(name: impl Into<String>, q: BigRational) -> Self {
        let mut symbols = BTreeMap::new();
        if !q.is_zero() {
            symbols.insert(name.into(), q);
        }
        Self { symbols, ..Self::default() }
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn pi_coeff(&self) -> &BigRational {
        &self.pi
    }

    pub fn symbol_coeffs(&self) -> &BTreeMap<String, BigRational> {
        &self.symbols
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.pi.is_zero() && self.symbols.is_empty()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            constant: &self.constant * q,
            pi: &self.pi * q,
            symbols: self.symbols.iter().map(|(k, v)| (k.clone(), v * q)).collect(),
        }
    }

    /// Whether the value lies in `2πℤ`, i.e. whether `e^{i·v} = 1`.
    ///
    /// Under the independence assumption this holds exactly when the
    /// constant and every symbol coefficient vanish and the π-coefficient is
    /// an even integer.
    pub fn is_in_two_pi_z(&self) -> bool {
        self.constant.is_zero()
            && self.symbols.is_empty()
            && self.pi.is_integer()
            && (self.pi.to_integer() % BigInt::from(2)).is_zero()
    }
}

impl Add<&FormalReal> for &FormalReal {
    type Output = FormalReal;
    fn add(self, rhs: &FormalReal) -> FormalReal {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&FormalReal> for FormalReal {
    fn add_assign(&mut self, rhs: &FormalReal) {
        self.constant += &rhs.constant;
        self.pi += &rhs.pi;
        for (name, q) in &rhs.symbols {
            let entry = self.symbols.entry(name.clone()).or_insert_with(BigRational::zero);
            *entry += q;
            if entry.is_zero() {
                self.symbols.remove(name);
            }
        }
    }
}

impl Neg for &FormalReal {
    type Output = FormalReal;
    fn neg(self) -> FormalReal {
        self.scale(&-BigRational::one())
    }
}

impl Sub<&FormalReal> for &FormalReal {
    type Output = FormalReal;
    fn sub(self, rhs: &FormalReal) -> FormalReal {
        self + &(-rhs)
    }
}

impl fmt::Display for FormalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(BigRational, Option<&str>)> = Vec::new();
        if !self.constant.is_zero() {
            parts.push((self.constant.clone(), None));
        }
        if !self.pi.is_zero() {
            parts.push((self.pi.clone(), Some("pi")));
        }
        for (name, q) in &self.symbols {
            parts.push((q.clone(), Some(name.as_str())));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (idx, (q, name)) in parts.iter().enumerate() {
            let sep = match (idx, q.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            match name {
                None => write!(f, "{sep}{}", q.abs())?,
                Some(n) => write!(f, "{sep}{}*{n}", q.abs())?,
            }
        }
        Ok(())
    }
}
