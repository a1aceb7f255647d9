//! Dolbeault and de Rham cohomology of the finite complexes.

use crate::complex::{BigradedComplex, GradedComplex};
use crate::error::ModelError;
use crate::exterior::Form;
use crate::linalg::{nullspace, rank, rref, span_basis};
use crate::model::{Model, Which};

/// Hodge numbers `h^{p,q}` and canonical cocycle representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    /// Bidegrees run over `0..=top` in both entries.
    pub top: usize,
    /// `hodge[p][q] = dim ker ∂̄_{p,q} − rank ∂̄_{p,q−1}`.
    pub hodge: Vec<Vec<usize>>,
    /// `representatives[p][q]` spans a complement of the coboundaries in the
    /// cocycles, in reduced echelon form after reduction modulo coboundaries.
    pub representatives: Vec<Vec<Vec<Form>>>,
}

impl CohomologyTable {
    pub fn h(&self, p: usize, q: usize) -> usize {
        self.hodge.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=k} h^{p,q}`.
    pub fn total(&self, k: usize) -> usize {
        (0..=self.top.min(k)).filter(|&p| k - p <= self.top).map(|p| self.h(p, k - p)).sum()
    }

    pub fn euler(&self) -> i64 {
        let mut acc = 0i64;
        for p in 0..=self.top {
            for q in 0..=self.top {
                let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                acc += sign * self.h(p, q) as i64;
            }
        }
        acc
    }

    /// `h^{p,q} = h^{N−p,N−q}` for all bidegrees.
    pub fn is_serre_symmetric(&self) -> bool {
        let t = self.top;
        (0..=t).all(|p| (0..=t).all(|q| self.h(p, q) == self.h(t - p, t - q)))
    }
}

/// Cohomology at one bidegree: the dimension and canonical representatives.
pub fn cohomology_at(cx: &BigradedComplex, p: usize, q: usize) -> (usize, Vec<Form>) {
    let dim = cx.dim(p, q);
    let kernel = nullspace(cx.outgoing(p, q));
    let incoming = cx.incoming(p, q);
    let image_rows: Vec<_> = (0..incoming.cols()).map(|j| incoming.column(j)).collect();
    let image = rref(&crate::linalg::Matrix::from_rows(image_rows, dim));
    let reduced: Vec<_> = kernel.iter().map(|v| image.reduce(v)).collect();
    let reps = span_basis(&reduced, dim);
    let h = kernel.len() - image.rank();
    debug_assert_eq!(reps.len(), h);
    debug_assert_eq!(rank(cx.outgoing(p, q)) + kernel.len(), dim);
    (h, reps.iter().map(|v| cx.form(p, q, v)).collect())
}

pub fn cohomology(cx: &BigradedComplex) -> CohomologyTable {
    let top = cx.top();
    let mut hodge = vec![vec![0; top + 1]; top + 1];
    let mut representatives = vec![vec![Vec::new(); top + 1]; top + 1];
    for p in 0..=top {
        for q in 0..=top {
            let (h, reps) = cohomology_at(cx, p, q);
            hodge[p][q] = h;
            representatives[p][q] = reps;
        }
    }
    CohomologyTable { top, hodge, representatives }
}

/// Dolbeault cohomology of the left-invariant forms of `n`, `a ⊕ n` or `g`.
pub fn lie_dolbeault(model: &Model, which: Which) -> Result<CohomologyTable, ModelError> {
    Ok(cohomology(&BigradedComplex::full(model.dbar(which)?)))
}

/// Betti numbers `b_0, …, b_{2N}` of a graded complex.
pub fn betti(cx: &GradedComplex) -> Vec<usize> {
    (0..=cx.top())
        .map(|k| {
            let ker = cx.dim(k) - rank(cx.outgoing(k));
            ker - rank(&cx.incoming(k))
        })
        .collect()
}

/// de Rham cohomology of the Lie algebra `g` under `d = ∂ + ∂̄`.
pub fn de_rham(model: &Model) -> Result<Vec<usize>, ModelError> {
    let d = model.dbar(Which::G)?.total()?;
    Ok(betti(&GradedComplex::full(d)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSumRow {
    pub k: usize,
    pub hodge_sum: usize,
    pub betti: usize,
    pub equal: bool,
}

/// Degree-wise comparison of `Σ_{p+q=k} h^{p,q}(B)` with `b_k(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSumReport {
    pub rows: Vec<HodgeSumRow>,
    pub all_equal: bool,
}

pub fn hodge_sum_check(model: &Model) -> Result<HodgeSumReport, ModelError> {
    let table = cohomology(model.build_b()?.complex());
    Ok(compare_sums(&table, &de_rham(model)?))
}

pub fn compare_sums(table: &CohomologyTable, betti: &[usize]) -> HodgeSumReport {
    let rows: Vec<HodgeSumRow> = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let s = table.total(k);
            HodgeSumRow { k, hodge_sum: s, betti: b, equal: s == b }
        })
        .collect();
    let all_equal = rows.iter().all(|r| r.equal);
    HodgeSumReport { rows, all_equal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{Character, LatticeGen};
    use crate::exterior::{ce_from_brackets, BracketTerm, Brackets, Differential, Universe};
    use crate::model::{ModelSpec, NilpotentStructure};
    use crate::scalars::{rat, FormalReal, GaussRat};
    use num_traits::One;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn example1(y: FormalReal) -> Model {
        let mut symbols = vec!["a".to_string()];
        symbols.extend(y.symbol_coeffs().keys().cloned());
        Model::new(ModelSpec {
            n: 1,
            m: 2,
            alphas: vec![Character::from_ints(&[[1, 0, 0, 0]]), Character::from_ints(&[[-1, 0, 0, 0]])],
            nilpotent: NilpotentStructure::Brackets(Brackets { m: 2, ..Brackets::default() }),
            lattice: vec![
                LatticeGen::new(vec![FormalReal::symbol("a", rat(1, 1)), FormalReal::zero()]),
                LatticeGen::new(vec![FormalReal::zero(), y]),
            ],
            symbols,
            nilmanifold_assumption_asserted: true,
        })
        .unwrap()
    }

    #[test]
    fn example1_case_b_table() {
        let model = example1(FormalReal::pi(rat(1, 1)));
        let table = cohomology(model.build_b().unwrap().complex());
        let expected = [[1, 1, 1, 1], [1, 5, 5, 1], [1, 5, 5, 1], [1, 1, 1, 1]];
        for p in 0..4 {
            for q in 0..4 {
                assert_eq!(table.h(p, q), expected[p][q], "h^{{{p},{q}}}");
            }
        }
        assert!(table.is_serre_symmetric());
    }

    #[test]
    fn lie_algebra_tables_of_example1() {
        let model = example1(FormalReal::symbol("b", rat(1, 1)));
        let an = lie_dolbeault(&model, Which::AN).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                assert_eq!(an.h(p, q), binom(3, p) * binom(3, q));
            }
        }
        let g = lie_dolbeault(&model, Which::G).unwrap();
        assert_eq!(g.h(1, 0), 1);
        let b = cohomology(model.build_b().unwrap().complex());
        assert_eq!(g.hodge, b.hodge);
    }

    #[test]
    fn de_rham_of_example1() {
        let model = example1(FormalReal::pi(rat(2, 1)));
        assert_eq!(de_rham(&model).unwrap(), vec![1, 2, 5, 8, 5, 2, 1]);
        let report = hodge_sum_check(&model).unwrap();
        assert!(!report.all_equal);
        assert_eq!(report.rows[1], HodgeSumRow { k: 1, hodge_sum: 6, betti: 2, equal: false });
        let report = hodge_sum_check(&example1(FormalReal::symbol("b", rat(1, 1)))).unwrap();
        assert!(report.all_equal);
    }

    #[test]
    fn heisenberg_cohomology() {
        // Iwasawa-type algebra [Y1, Ȳ2] = Y3 has h^{1,0} = 2 (w1, w2 closed; w3 not)
        let dbar: Differential = ce_from_brackets(&Brackets {
            m: 3,
            d: vec![BracketTerm::new(0, 1, 2, GaussRat::one())],
            ..Brackets::default()
        })
        .unwrap();
        let table = cohomology(&BigradedComplex::full(dbar));
        assert_eq!(table.h(0, 0), 1);
        assert_eq!(table.h(1, 0), 2);
        assert_eq!(table.h(0, 1), 3);
        assert!(table.is_serre_symmetric());
        let euler_cochains: i64 = (0..=3)
            .flat_map(|p| (0..=3).map(move |q| (p, q)))
            .map(|(p, q)| if (p + q) % 2 == 0 { 1 } else { -1 } * (binom(3, p) * binom(3, q)) as i64)
            .sum();
        assert_eq!(table.euler(), euler_cochains);
    }

    #[test]
    fn representatives_are_closed_and_canonical() {
        let dbar = ce_from_brackets(&Brackets {
            m: 3,
            d: vec![BracketTerm::new(0, 1, 2, GaussRat::one())],
            ..Brackets::default()
        })
        .unwrap();
        let cx = BigradedComplex::full(dbar.clone());
        let table = cohomology(&cx);
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(table.representatives[p][q].len(), table.h(p, q));
                for rep in &table.representatives[p][q] {
                    assert!(dbar.apply(rep).unwrap().is_zero());
                }
            }
        }
        assert_eq!(cohomology(&cx), table);
    }

    #[test]
    fn zero_differential_gives_cochains() {
        let cx = BigradedComplex::full(Differential::zero(Universe::new(1, 1)));
        let table = cohomology(&cx);
        for p in 0..=2 {
            for q in 0..=2 {
                assert_eq!(table.h(p, q), cx.dim(p, q));
            }
        }
    }
}
