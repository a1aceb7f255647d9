mod common;

use common::random_model;
use dolbeault_core::cohomology::cohomology_at;
use dolbeault_core::hodge::{codifferential_kernels_agree, star_form};
use dolbeault_core::linalg::rank;
use dolbeault_core::{
    cohomology, harmonic_space, hodge_star, rat, serre_duality_check, BigradedComplex, Differential, Form, GaussRat,
    Monomial, NilpotentStructure, Which,
};
use proptest::prelude::*;

fn complexes(seed: u64) -> Vec<BigradedComplex> {
    let model = random_model(seed);
    vec![model.build_b().unwrap().complex().clone(), BigradedComplex::full(model.dbar(Which::G).unwrap())]
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn random_form(u: dolbeault_core::Universe, picks: &[(u64, i64, i64)]) -> Form {
    let mask = (1u64 << u.generator_count()) - 1;
    let mut f = Form::zero(u);
    for &(bits, re, im) in picks {
        f.add_term(Monomial::from_bits(bits & mask), &GaussRat::new(rat(re, 1), rat(im, 1)));
    }
    f
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn dbar_squares_to_zero(seed in any::<u64>()) {
        for cx in complexes(seed) {
            let top = cx.top();
            for p in 0..=top {
                for q in 0..top {
                    prop_assert!(cx.outgoing(p, q + 1).mul(cx.outgoing(p, q)).is_zero());
                }
            }
        }
    }

    #[test]
    fn leibniz_residual_vanishes(
        seed in any::<u64>(),
        a in proptest::collection::vec((any::<u64>(), -2i64..=2, -2i64..=2), 0..4),
        b in proptest::collection::vec((any::<u64>(), -2i64..=2, -2i64..=2), 0..4),
    ) {
        let model = random_model(seed);
        let d: Differential = model.dbar(Which::G).unwrap().total().unwrap();
        let u = model.universe();
        let (fa, fb) = (random_form(u, &a), random_form(u, &b));
        let mut even = Form::zero(u);
        let mut odd = Form::zero(u);
        for (mon, c) in fa.terms() {
            if mon.degree() % 2 == 0 { even.add_term(*mon, c) } else { odd.add_term(*mon, c) }
        }
        let db = d.apply(&fb).unwrap();
        let residual = d
            .apply(&fa.wedge(&fb))
            .unwrap()
            .sub(&d.apply(&fa).unwrap().wedge(&fb))
            .sub(&even.wedge(&db))
            .add(&odd.wedge(&db));
        prop_assert!(residual.is_zero());
    }

    #[test]
    fn rank_nullity_and_euler(seed in any::<u64>()) {
        for cx in complexes(seed) {
            let table = cohomology(&cx);
            let top = cx.top();
            let mut euler = 0i64;
            for p in 0..=top {
                for q in 0..=top {
                    let r_out = rank(cx.outgoing(p, q));
                    let r_in = rank(&cx.incoming(p, q));
                    prop_assert_eq!(table.h(p, q) + r_out + r_in, cx.dim(p, q));
                    let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                    euler += sign * cx.dim(p, q) as i64;
                }
            }
            prop_assert_eq!(table.euler(), euler);
        }
    }

    #[test]
    fn representatives_are_cocycles(seed in any::<u64>()) {
        for cx in complexes(seed) {
            let table = cohomology(&cx);
            for p in 0..=cx.top() {
                for q in 0..=cx.top() {
                    prop_assert_eq!(table.representatives[p][q].len(), table.h(p, q));
                    for rep in &table.representatives[p][q] {
                        prop_assert!(cx.differential().apply(rep).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn serre_duality_on_b(seed in any::<u64>()) {
        let b = random_model(seed).build_b().unwrap();
        prop_assert!(serre_duality_check(&b).unwrap());
        let cx = b.complex();
        let u = cx.universe();
        for p in 0..=cx.top() {
            for q in 0..=cx.top() {
                for mon in cx.basis(p, q) {
                    let (_, comp) = hodge_star(&u, *mon);
                    prop_assert!(cx.contains(comp));
                }
            }
        }
        prop_assert_eq!(cx.dim(0, 0), 1);
    }

    #[test]
    fn filter_is_multiplicative(seed in any::<u64>()) {
        let model = random_model(seed);
        let u = model.universe();
        let all: Vec<Monomial> = (0..=u.generator_count()).flat_map(|k| u.monomials_of_degree(k)).collect();
        let passing: Vec<Monomial> = all.iter().copied().filter(|m| model.passes_filter(*m)).collect();
        for a in passing.iter().take(40) {
            for b in passing.iter().take(40) {
                if a.bits() & b.bits() == 0 {
                    prop_assert!(model.passes_filter(Monomial::from_bits(a.bits() | b.bits())));
                }
            }
        }
    }

    #[test]
    fn dbar_preserves_full_weight(seed in any::<u64>()) {
        let model = random_model(seed);
        for which in [Which::AN, Which::G] {
            let d = model.dbar(which).unwrap();
            let u = model.universe();
            for k in 0..=u.generator_count() {
                for mon in u.monomials_of_degree(k) {
                    let w = model.full_weight(mon);
                    for t in d.apply_monomial(mon).terms().keys() {
                        prop_assert_eq!(model.full_weight(*t), w.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn zero_differential_gives_cochains(seed in any::<u64>()) {
        let model = random_model(seed);
        let abelian = matches!(&model.spec().nilpotent, NilpotentStructure::Brackets(b) if b.c.is_empty() && b.d.is_empty());
        if abelian {
            let b = model.build_b().unwrap();
            let cx = b.complex();
            let table = cohomology(cx);
            for p in 0..=cx.top() {
                for q in 0..=cx.top() {
                    prop_assert_eq!(table.h(p, q), cx.dim(p, q));
                }
            }
        }
    }

    #[test]
    fn star_is_antilinear(
        seed in any::<u64>(),
        picks in proptest::collection::vec((any::<u64>(), -3i64..=3, -3i64..=3), 0..5),
        re in -4i64..=4,
        im in -4i64..=4,
    ) {
        let u = random_model(seed).universe();
        let f = random_form(u, &picks);
        let c = GaussRat::new(rat(re, 3), rat(im, 2));
        prop_assert_eq!(star_form(&f.scale(&c)), star_form(&f).scale(&c.conj()));
    }

    #[test]
    fn harmonic_dimension_is_cohomology_dimension(seed in any::<u64>()) {
        for cx in complexes(seed) {
            for p in 0..=cx.top() {
                for q in 0..=cx.top() {
                    let (h, _) = cohomology_at(&cx, p, q);
                    let harm = harmonic_space(&cx, p, q);
                    prop_assert_eq!(harm.dim(), h);
                    for f in &harm.basis {
                        prop_assert!(cx.differential().apply(f).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn star_codifferential_has_adjoint_kernel(seed in any::<u64>()) {
        let cx = random_model(seed).build_b().unwrap().complex().clone();
        for p in 0..=cx.top() {
            for q in 0..=cx.top() {
                prop_assert!(codifferential_kernels_agree(&cx, p, q).unwrap());
            }
        }
    }

    #[test]
    fn adjoint_restricts_from_ambient(seed in any::<u64>()) {
        let model = random_model(seed);
        let b = model.build_b().unwrap();
        let sub = b.complex();
        let ambient = BigradedComplex::full(model.dbar(Which::AN).unwrap());
        for p in 0..=sub.top() {
            for q in 1..=sub.top() {
                // the ambient adjoint of each B^{p,q} basis element, read in B^{p,q-1}
                let amb_adj = ambient.incoming(p, q).conj_transpose();
                let sub_adj = sub.incoming(p, q).conj_transpose();
                for (j, mon) in sub.basis(p, q).iter().enumerate() {
                    let col = ambient.basis(p, q).binary_search(mon).unwrap();
                    for (i, target) in ambient.basis(p, q - 1).iter().enumerate() {
                        let v = amb_adj.get(i, col);
                        match sub.basis(p, q - 1).binary_search(target) {
                            Ok(si) => prop_assert_eq!(v, sub_adj.get(si, j)),
                            Err(_) => prop_assert!(num_traits::Zero::is_zero(v)),
                        }
                    }
                }
            }
        }
    }
}
