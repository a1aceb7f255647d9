//! The metric layer: monomials are orthonormal, `⋆̄` is the anti-linear
//! Hodge star, harmonic forms are `ker ∂̄ ∩ ker ∂̄*`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::characters::Character;
use crate::cohomology::cohomology;
use crate::complex::BigradedComplex;
use crate::error::HodgeError;
use crate::exterior::{wedge_sign, Form, Monomial, Universe};
use crate::linalg::{nullspace, same_span, span_basis, Matrix};
use crate::model::BComplex;
use crate::scalars::GaussRat;

/// `⋆̄μ = ε·μ′` for the complementary monomial `μ′`, with `ε` fixed by
/// `μ ∧ ⋆̄μ = vol` and `vol` the canonical top monomial.
pub fn hodge_star(universe: &Universe, mon: Monomial) -> (i8, Monomial) {
    let comp = mon.complement(universe);
    (wedge_sign(mon, comp).expect("complement is disjoint"), comp)
}

/// `⋆̄` extended anti-linearly: `⋆̄(c·μ) = c̄·⋆̄μ`.
pub fn star_form(form: &Form) -> Form {
    let u = form.universe();
    let mut out = Form::zero(u);
    for (mon, c) in form.terms() {
        let (sign, image) = hodge_star(&u, *mon);
        let v = c.conj();
        out.add_term(image, &if sign > 0 { v } else { -v });
    }
    out
}

/// Harmonic forms of one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicSpace {
    pub p: usize,
    pub q: usize,
    pub basis: Vec<Form>,
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn harmonic_coords(cx: &BigradedComplex, p: usize, q: usize) -> Vec<Vec<GaussRat>> {
    let adjoint = cx.incoming(p, q).conj_transpose();
    nullspace(&cx.outgoing(p, q).vstack(&adjoint))
}

/// `ker ∂̄ ∩ ker ∂̄*` with `∂̄*` the conjugate transpose in the monomial basis.
pub fn harmonic_space(cx: &BigradedComplex, p: usize, q: usize) -> HarmonicSpace {
    let basis = harmonic_coords(cx, p, q).iter().map(|v| cx.form(p, q, v)).collect();
    HarmonicSpace { p, q, basis }
}

/// Matrix of `δ̄ = ⋆̄∂̄⋆̄` from `(p, q)` to `(p, q − 1)` inside the complex.
pub fn codifferential_matrix(cx: &BigradedComplex, p: usize, q: usize) -> Result<Matrix, HodgeError> {
    let u = cx.universe();
    let top = cx.top();
    let source = cx.basis(p, q);
    if q == 0 {
        return Ok(Matrix::zero(0, source.len()));
    }
    let mut columns = Vec::with_capacity(source.len());
    for mon in source {
        let starred = star_form(&Form::monomial(u, *mon, GaussRat::one()));
        ensure_inside(cx, &starred, top - p, top - q)?;
        let image = star_form(&cx.differential().apply(&starred).expect("pure bidegree"));
        let coords = cx.coords(&image, p, q - 1).ok_or_else(|| escape(&u, &image, (p, q - 1)))?;
        columns.push(coords);
    }
    Ok(Matrix::from_columns(&columns, cx.dim(p, q - 1)))
}

fn ensure_inside(cx: &BigradedComplex, form: &Form, p: usize, q: usize) -> Result<(), HodgeError> {
    match cx.coords(form, p, q) {
        Some(_) => Ok(()),
        None => Err(escape(&cx.universe(), form, (p, q))),
    }
}

fn escape(u: &Universe, form: &Form, bidegree: (usize, usize)) -> HodgeError {
    let mon = form.terms().keys().next().copied().unwrap_or(Monomial::ONE);
    HodgeError::StarEscapes { monomial: mon.display(u).to_string(), bidegree }
}

/// Whether `ker ∂̄ ∩ ker δ̄` equals `ker ∂̄ ∩ ker ∂̄*` at `(p, q)`.
pub fn codifferential_kernels_agree(cx: &BigradedComplex, p: usize, q: usize) -> Result<bool, HodgeError> {
    let dim = cx.dim(p, q);
    let via_star = nullspace(&cx.outgoing(p, q).vstack(&codifferential_matrix(cx, p, q)?));
    Ok(same_span(&via_star, &harmonic_coords(cx, p, q), dim))
}

/// `χ · x_I∧y_J∧x̄_K∧ȳ_L` as an actual form on the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConcreteForm {
    pub character: Character,
    pub monomial: Monomial,
    pub scalar: GaussRat,
}

impl ConcreteForm {
    /// Conjugation swaps barred and unbarred indices and conjugates the
    /// character and scalar.
    pub fn conj(&self, universe: &Universe) -> ConcreteForm {
        let (sign, mon) = self.monomial.conj(universe);
        let c = self.scalar.conj();
        ConcreteForm { character: self.character.conj(), monomial: mon, scalar: if sign > 0 { c } else { -c } }
    }
}

/// Writes a form of `B` term by term with its frame characters.
pub fn concrete_terms(b: &BComplex, form: &Form) -> Vec<ConcreteForm> {
    form.terms()
        .iter()
        .map(|(mon, c)| ConcreteForm {
            character: b.frame(*mon).expect("form lies in B").clone(),
            monomial: *mon,
            scalar: c.clone(),
        })
        .collect()
}

/// Whether the conjugates of the harmonic `(p, q)`-forms span exactly the
/// harmonic `(q, p)`-forms, as forms on the group.
pub fn hodge_symmetry_check(b: &BComplex, p: usize, q: usize) -> bool {
    let cx = b.complex();
    let u = cx.universe();
    let mut keys: HashMap<(Character, Monomial), usize> = HashMap::new();
    let mut encode = |terms: Vec<ConcreteForm>| -> Vec<(usize, GaussRat)> {
        terms
            .into_iter()
            .map(|t| {
                let next = keys.len();
                (*keys.entry((t.character, t.monomial)).or_insert(next), t.scalar)
            })
            .collect()
    };
    let conjugated: Vec<_> = harmonic_space(cx, p, q)
        .basis
        .iter()
        .map(|f| encode(concrete_terms(b, f).iter().map(|t| t.conj(&u)).collect()))
        .collect();
    let target: Vec<_> = harmonic_space(cx, q, p).basis.iter().map(|f| encode(concrete_terms(b, f))).collect();
    let dim = keys.len();
    let dense = |rows: &[Vec<(usize, GaussRat)>]| -> Vec<Vec<GaussRat>> {
        rows.iter()
            .map(|r| {
                let mut v = vec![GaussRat::zero(); dim];
                for (i, c) in r {
                    v[*i] = c.clone();
                }
                v
            })
            .collect()
    };
    span_basis(&dense(&conjugated), dim) == span_basis(&dense(&target), dim)
}

/// Checks that `⋆̄` maps every basis monomial of `B^{p,q}` into
/// `B^{N−p,N−q}`, then reports whether `h^{p,q} = h^{N−p,N−q}`.
pub fn serre_duality_check(b: &BComplex) -> Result<bool, HodgeError> {
    let cx = b.complex();
    let u = cx.universe();
    let top = cx.top();
    for p in 0..=top {
        for q in 0..=top {
            for mon in cx.basis(p, q) {
                let (_, image) = hodge_star(&u, *mon);
                if !cx.contains(image) {
                    return Err(HodgeError::StarEscapes {
                        monomial: mon.display(&u).to_string(),
                        bidegree: (top - p, top - q),
                    });
                }
            }
        }
    }
    Ok(cohomology(cx).is_serre_symmetric())
}
