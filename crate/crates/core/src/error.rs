use thiserror::Error;

use crate::exterior::DiffKind;
use crate::model::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("characters on C^{left} and C^{right} cannot be multiplied")]
    DimensionMismatch { left: usize, right: usize },
    #[error("lattice generator has {found} coordinates, expected {expected}")]
    LatticeDimension { expected: usize, found: usize },
    #[error("character {0} is not unitary")]
    NotUnitary(String),
}

/// One defect in bracket data; indices are 0-based, displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketViolation {
    #[error("structure constant ({}, {}, {}) out of range for m = {m}", a + 1, b + 1, c + 1)]
    IndexOutOfRange { a: usize, b: usize, c: usize, m: usize },
    #[error("bracket [Y{}, Y{}] has inconsistent Y{} components", a + 1, b + 1, c + 1)]
    NotAntisymmetric { a: usize, b: usize, c: usize },
    #[error("integrability: [Y{}, Y{}] has a nonzero Ybar{} component", a + 1, b + 1, c + 1)]
    Integrability { a: usize, b: usize, c: usize },
    #[error("reality: Ybar{} component of [Y{}, Ybar{}] disagrees with the conjugate of the mixed constants", c + 1, a + 1, b + 1)]
    Reality { a: usize, b: usize, c: usize },
    #[error("Jacobi identity fails on basis elements ({}, {}, {})", i + 1, j + 1, k + 1)]
    Jacobi { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("image of {generator} has a term of bidegree {found:?}, not allowed for {kind:?}")]
    WrongBidegree { generator: String, kind: DiffKind, found: (usize, usize) },
    #[error("differential does not square to zero on {generator}: residual {residual}")]
    SquareNonzero { generator: String, residual: String },
    #[error("form {0} is not of pure bidegree")]
    MixedBidegree(String),
    #[error("form and differential live over different generator sets")]
    UniverseMismatch,
    #[error("invalid brackets: {}", join(.0))]
    Brackets(Vec<BracketViolation>),
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("d-bar of basis monomial {monomial} leaves the subcomplex through {escaping}")]
    Closure { monomial: String, escaping: String },
    #[error("d-bar squared is nonzero starting in bidegree ({p}, {q})")]
    SquareNonzero { p: usize, q: usize },
    #[error("d squared is nonzero starting in degree {k}")]
    TotalSquareNonzero { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model is invalid:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Structure(#[from] ExteriorError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("star condition enumerates 2^(2m) index pairs; m = {m} exceeds the bound {bound} (raise it explicitly)")]
    StarBoundExceeded { m: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("star of {monomial} lands outside B in bidegree {bidegree:?}")]
    StarEscapes { monomial: String, bidegree: (usize, usize) },
    #[error(transparent)]
    Model(#[from] ModelError),
}
