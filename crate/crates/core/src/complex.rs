//! Finite cochain complexes spanned by monomials, with their differentials as
//! exact matrices.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::ComplexError;
use crate::exterior::{DiffKind, Differential, Form, Monomial, Universe};
use crate::linalg::Matrix;
use crate::scalars::GaussRat;

/// A ∂̄-stable span of monomials graded by bidegree.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    dbar: Differential,
    bases: Vec<Vec<Vec<Monomial>>>,
    index: HashMap<Monomial, usize>,
    /// `matrices[p][q]` maps `B^{p,q}` to `B^{p,q+1}`.
    matrices: Vec<Vec<Matrix>>,
}

impl BigradedComplex {
    /// Spans the monomials accepted by `filter`, checking that ∂̄ keeps the
    /// span and that the assembled matrices compose to zero.
    pub fn new(dbar: Differential, filter: impl Fn(Monomial) -> bool) -> Result<Self, ComplexError> {
        assert_eq!(dbar.kind(), DiffKind::Dbar, "bigraded complexes are built from d-bar");
        let universe = dbar.universe();
        let top = universe.dim();
        let mut index = HashMap::new();
        let mut bases = vec![vec![Vec::new(); top + 1]; top + 1];
        for (p, row) in bases.iter_mut().enumerate() {
            for (q, slot) in row.iter_mut().enumerate() {
                *slot = universe.monomials(p, q).into_iter().filter(|&mon| filter(mon)).collect();
                for (i, mon) in slot.iter().enumerate() {
                    index.insert(*mon, i);
                }
            }
        }
        let mut matrices = vec![Vec::with_capacity(top + 1); top + 1];
        for p in 0..=top {
            for q in 0..=top {
                let source = &bases[p][q];
                let target_dim = if q < top { bases[p][q + 1].len() } else { 0 };
                let mut mat = Matrix::zero(target_dim, source.len());
                for (j, mon) in source.iter().enumerate() {
                    for (t, c) in dbar.apply_monomial(*mon).terms() {
                        let Some(&i) = index.get(t) else {
                            return Err(ComplexError::Closure {
                                monomial: mon.display(&universe).to_string(),
                                escaping: t.display(&universe).to_string(),
                            });
                        };
                        mat.set(i, j, c.clone());
                    }
                }
                matrices[p].push(mat);
            }
        }
        let cx = Self { dbar, bases, index, matrices };
        for p in 0..=top {
            for q in 0..top {
                if !cx.matrices[p][q + 1].mul(&cx.matrices[p][q]).is_zero() {
                    return Err(ComplexError::SquareNonzero { p, q });
                }
            }
        }
        Ok(cx)
    }

    /// The whole exterior algebra.
    pub fn full(dbar: Differential) -> Self {
        Self::new(dbar, |_| true).expect("a validated differential preserves the full algebra")
    }

    pub fn universe(&self) -> Universe {
        self.dbar.universe()
    }

    pub fn differential(&self) -> &Differential {
        &self.dbar
    }

    /// Complex dimension; bidegrees run over `0..=top()`.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, p: usize, q: usize) -> &[Monomial] {
        self.bases.get(p).and_then(|r| r.get(q)).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.basis(p, q).len()
    }

    pub fn contains(&self, mon: Monomial) -> bool {
        let (p, q) = mon.bidegree(&self.universe());
        self.basis(p, q).binary_search(&mon).is_ok()
    }

    /// ∂̄ from bidegree `(p, q)` to `(p, q + 1)`.
    pub fn outgoing(&self, p: usize, q: usize) -> &Matrix {
        &self.matrices[p][q]
    }

    /// ∂̄ from bidegree `(p, q − 1)` to `(p, q)`; empty when `q = 0`.
    pub fn incoming(&self, p: usize, q: usize) -> Matrix {
        if q == 0 {
            Matrix::zero(self.dim(p, q), 0)
        } else {
            self.matrices[p][q - 1].clone()
        }
    }

    /// Coordinates of a form in the basis of `(p, q)`, if it lies in the span.
    pub fn coords(&self, form: &Form, p: usize, q: usize) -> Option<Vec<GaussRat>> {
        let basis = self.basis(p, q);
        let mut out = vec![GaussRat::zero(); basis.len()];
        for (mon, c) in form.terms() {
            let i = basis.binary_search(mon).ok()?;
            debug_assert_eq!(self.index.get(mon), Some(&i));
            out[i] = c.clone();
        }
        Some(out)
    }

    pub fn form(&self, p: usize, q: usize, coords: &[GaussRat]) -> Form {
        Form::from_coords(self.universe(), self.basis(p, q), coords)
    }
}

/// A `d`-stable span of monomials graded by total degree.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    d: Differential,
    bases: Vec<Vec<Monomial>>,
    /// `matrices[k]` maps degree `k` to degree `k + 1`.
    matrices: Vec<Matrix>,
}

impl GradedComplex {
    /// The whole exterior algebra under a total differential.
    pub fn full(d: Differential) -> Result<Self, ComplexError> {
        assert_eq!(d.kind(), DiffKind::Total, "graded complexes are built from d");
        let universe = d.universe();
        let top = universe.generator_count();
        let bases: Vec<Vec<Monomial>> = (0..=top).map(|k| universe.monomials_of_degree(k)).collect();
        let mut matrices = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let target: &[Monomial] = if k < top { &bases[k + 1] } else { &[] };
            let mut mat = Matrix::zero(target.len(), bases[k].len());
            for (j, mon) in bases[k].iter().enumerate() {
                for (t, c) in d.apply_monomial(*mon).terms() {
                    let i = target.binary_search(t).expect("d raises degree by one");
                    mat.set(i, j, c.clone());
                }
            }
            matrices.push(mat);
        }
        for k in 0..top {
            if !matrices[k + 1].mul(&matrices[k]).is_zero() {
                return Err(ComplexError::TotalSquareNonzero { k });
            }
        }
        Ok(Self { d, bases, matrices })
    }

    pub fn differential(&self) -> &Differential {
        &self.d
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, |b| b.len())
    }

    pub fn basis(&self, k: usize) -> &[Monomial] {
        self.bases.get(k).map_or(&[], |b| b.as_slice())
    }

    pub fn outgoing(&self, k: usize) -> &Matrix {
        &self.matrices[k]
    }

    pub fn incoming(&self, k: usize) -> Matrix {
        if k == 0 {
            Matrix::zero(self.dim(0), 0)
        } else {
            self.matrices[k - 1].clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{ce_from_brackets, BracketTerm, Brackets, Generator};
    use num_traits::One;

    fn heisenberg() -> Differential {
        ce_from_brackets(&Brackets { m: 3, d: vec![BracketTerm::new(0, 1, 2, GaussRat::one())], ..Brackets::default() })
            .unwrap()
    }

    #[test]
    fn full_complex_dimensions() {
        let cx = BigradedComplex::full(heisenberg());
        assert_eq!(cx.top(), 3);
        assert_eq!(cx.dim(1, 1), 9);
        assert_eq!(cx.dim(0, 0), 1);
        assert_eq!(cx.outgoing(0, 3).rows(), 0);
        assert_eq!(cx.incoming(2, 0).cols(), 0);
    }

    #[test]
    fn closure_failure_names_the_escaping_monomial() {
        let u = Universe::new(0, 3);
        let w3 = Monomial::generator(&u, Generator::W(2));
        let err = BigradedComplex::new(heisenberg(), |mon| mon == Monomial::ONE || mon == w3).unwrap_err();
        assert_eq!(err, ComplexError::Closure { monomial: "w3".into(), escaping: "w1^wb2".into() });
    }

    #[test]
    fn coordinates_round_trip() {
        let cx = BigradedComplex::full(heisenberg());
        let f = cx.differential().apply_monomial(Monomial::generator(&cx.universe(), Generator::W(2)));
        let coords = cx.coords(&f, 1, 1).unwrap();
        assert_eq!(cx.form(1, 1, &coords), f);
        assert!(cx.coords(&f, 0, 2).is_none());
    }

    #[test]
    fn de_rham_complex_squares_to_zero() {
        let d = heisenberg().total().unwrap();
        let cx = GradedComplex::full(d).unwrap();
        assert_eq!(cx.top(), 6);
        assert_eq!(cx.dim(3), 20);
    }
}
