//! Exact Dolbeault cohomology of solvmanifolds `Cⁿ ⋉_φ N` through a finite
//! bigraded model.
//!
//! The pipeline is: characters and lattice data ([`characters`]) label the
//! generators of a finite exterior algebra ([`exterior`]); [`model`] filters
//! the monomials whose unitary weight is trivial on the lattice and builds the
//! subcomplex; [`cohomology`] and [`hodge`] compute dimensions, harmonic forms
//! and the symmetry diagnostics over the Gaussian rationals ([`scalars`]).

pub mod characters;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod hodge;
pub mod linalg;
pub mod model;
pub mod scalars;

pub use characters::{Character, LatticeGen, Quad};
pub use cohomology::{cohomology, de_rham, hodge_sum_check, lie_dolbeault, CohomologyTable, HodgeSumReport};
pub use complex::{BigradedComplex, GradedComplex};
pub use error::{BracketViolation, CharacterError, ComplexError, ExteriorError, HodgeError, ModelError, ScalarError};
pub use exterior::{
    ce_from_brackets, BracketTerm, Brackets, DiffKind, Differential, DifferentialSpec, Form, Generator, Monomial,
    Universe,
};
pub use hodge::{harmonic_space, hodge_star, hodge_symmetry_check, serre_duality_check, ConcreteForm, HarmonicSpace};
pub use model::{BComplex, Condition, Model, ModelSpec, NilpotentStructure, ValidationReport, Violation, Which};
pub use scalars::{rat, FormalReal, GaussRat};
