//! Smooth characters of `Cⁿ` and their restriction to lattices.
//!
//! A character is stored through its exponent: for coordinates
//! `z_i = x_i + i·y_i`,
//!
//! ```text
//! χ(z) = exp( Σ_i (a_i x_i + b_i y_i) + i·Σ_i (c_i x_i + d_i y_i) )
//! ```
//!
//! so the group law is addition of the quadruples `(a_i, b_i, c_i, d_i)`.
//! Two characters are equivalent when their quotient is holomorphic; every
//! character has exactly one unitary representative, and a unitary character
//! induces the trivial line bundle on `Cⁿ/Γ′` exactly when it is `1` on `Γ′`.

use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::CharacterError;
use crate::scalars::{rat, FormalReal, GaussRat};

/// Exponent coefficients of one complex coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Quad {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Self::new(rat(v[0], 1), rat(v[1], 1), rat(v[2], 1), rat(v[3], 1))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

/// A `C^∞` character of `Cⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    coeffs: Vec<Quad>,
}

impl Character {
    pub fn new(coeffs: Vec<Quad>) -> Self {
        Self { coeffs }
    }

    pub fn trivial(n: usize) -> Self {
        Self { coeffs: vec![Quad::default(); n] }
    }

    /// Builds a character from integer quadruples, one per coordinate.
    pub fn from_ints(quads: &[[i64; 4]]) -> Self {
        Self::new(quads.iter().copied().map(Quad::from_ints).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Quad] {
        &self.coeffs
    }

    pub fn checked_mul(&self, other: &Character) -> Result<Character, CharacterError> {
        if self.dim() != other.dim() {
            return Err(CharacterError::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(p, q)| Quad::new(&p.a + &q.a, &p.b + &q.b, &p.c + &q.c, &p.d + &q.d))
            .collect();
        Ok(Self { coeffs })
    }

    pub fn inv(&self) -> Character {
        let coeffs = self.coeffs.iter().map(|q| Quad::new(-&q.a, -&q.b, -&q.c, -&q.d)).collect();
        Self { coeffs }
    }

    /// Complex conjugate: the imaginary part of the exponent changes sign.
    pub fn conj(&self) -> Character {
        let coeffs = self.coeffs.iter().map(|q| Quad::new(q.a.clone(), q.b.clone(), -&q.c, -&q.d)).collect();
        Self { coeffs }
    }

    /// The unique unitary character equivalent to `self`.
    ///
    /// Multiplying by the holomorphic character
    /// `exp(Σ (−a_i + i·b_i)·z_i)` kills the modulus of the exponent and
    /// leaves `(0, 0, c_i + b_i, d_i − a_i)`.
    pub fn unitary_equivalent(&self) -> Character {
        let coeffs = self
            .coeffs
            .iter()
            .map(|q| Quad::new(BigRational::zero(), BigRational::zero(), &q.c + &q.b, &q.d - &q.a))
            .collect();
        Self { coeffs }
    }

    pub fn is_unitary(&self) -> bool {
        self.coeffs.iter().all(|q| q.a.is_zero() && q.b.is_zero())
    }

    /// Holomorphic when the `z̄_i`-coefficient of the exponent vanishes for every `i`.
    pub fn is_holomorphic(&self) -> bool {
        self.coeffs.iter().all(|q| q.a == q.d && q.b == -&q.c)
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Quad::is_zero)
    }

    /// Coefficients of `dz̄_i` in `d log χ`, i.e. `(a_i − d_i + i(b_i + c_i))/2`.
    pub fn dbar_log(&self) -> Vec<GaussRat> {
        let half = rat(1, 2);
        self.coeffs.iter().map(|q| GaussRat::new((&q.a - &q.d) * &half, (&q.b + &q.c) * &half)).collect()
    }

    /// Coefficients of `dz_i` in `d log χ`, i.e. `(a_i + d_i + i(c_i − b_i))/2`.
    pub fn del_log(&self) -> Vec<GaussRat> {
        let half = rat(1, 2);
        self.coeffs.iter().map(|q| GaussRat::new((&q.a + &q.d) * &half, (&q.c - &q.b) * &half)).collect()
    }

    /// The phase `Σ_i (c_i x_i + d_i y_i)` at a lattice point; for a unitary
    /// character `χ(g) = e^{i·phase}`.
    pub fn phase_at(&self, gen: &LatticeGen) -> Result<FormalReal, CharacterError> {
        if gen.coords.len() != 2 * self.dim() {
            return Err(CharacterError::LatticeDimension { expected: 2 * self.dim(), found: gen.coords.len() });
        }
        let mut phase = FormalReal::zero();
        for (i, q) in self.coeffs.iter().enumerate() {
            phase += &gen.coords[2 * i].scale(&q.c);
            phase += &gen.coords[2 * i + 1].scale(&q.d);
        }
        Ok(phase)
    }

    /// Whether this unitary character is `1` on every generator.
    ///
    /// Non-unitary input is rejected rather than normalized.
    pub fn restricts_trivially(&self, gens: &[LatticeGen]) -> Result<bool, CharacterError> {
        if !self.is_unitary() {
            return Err(CharacterError::NotUnitary(self.to_string()));
        }
        for gen in gens {
            if !self.phase_at(gen)?.is_in_two_pi_z() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Panics on a dimension mismatch; use [`Character::checked_mul`] when the
/// operands are not known to live on the same `Cⁿ`.
impl Mul<&Character> for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        self.checked_mul(rhs).expect("characters of different dimensions")
    }
}

impl fmt::Display for Character {
    /// Renders the exponent, e.g. `e^{x1 - 2*i*y1}`; the trivial character is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (idx, q) in self.coeffs.iter().enumerate() {
            let k = idx + 1;
            for (coef, name) in
                [(&q.a, format!("x{k}")), (&q.b, format!("y{k}")), (&q.c, format!("i*x{k}")), (&q.d, format!("i*y{k}"))]
            {
                if !coef.is_zero() {
                    terms.push((coef.clone(), name));
                }
            }
        }
        if terms.is_empty() {
            return write!(f, "1");
        }
        write!(f, "e^{{")?;
        for (idx, (coef, name)) in terms.iter().enumerate() {
            let neg = coef.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = coef.abs();
            if mag == rat(1, 1) {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        write!(f, "}}")
    }
}

/// One generator of the lattice `Γ′ ⊂ Cⁿ`, as `(x₁, y₁, …, x_n, y_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeGen {
    pub coords: Vec<FormalReal>,
}

impl LatticeGen {
    pub fn new(coords: Vec<FormalReal>) -> Self {
        Self { coords }
    }
}
