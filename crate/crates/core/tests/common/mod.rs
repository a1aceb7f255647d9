//! Random small specs and an independent rank computation.

#![allow(dead_code)]

use dolbeault_core::linalg::Matrix;
use dolbeault_core::{
    ce_from_brackets, rat, BracketTerm, Brackets, Character, FormalReal, GaussRat, LatticeGen, Model, ModelSpec,
    NilpotentStructure, Quad,
};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const SYMBOLS: [&str; 3] = ["s", "t", "u"];

fn small(rng: &mut StdRng, lo: i64, hi: i64) -> BigRational {
    rat(rng.gen_range(lo..=hi), 1)
}

fn random_coeff(rng: &mut StdRng) -> GaussRat {
    match rng.gen_range(0..5) {
        0 => GaussRat::one(),
        1 => -GaussRat::one(),
        2 => GaussRat::i(),
        3 => GaussRat::new(rat(1, 1), rat(-1, 2)),
        _ => GaussRat::from_int(2),
    }
}

fn random_quad(rng: &mut StdRng) -> Quad {
    Quad::new(small(rng, -2, 2), small(rng, -2, 2), small(rng, -2, 2), small(rng, -2, 2))
}

/// Unimodular weights: random quads with the real parts of the last weight
/// balancing the others.
fn random_weights(rng: &mut StdRng, n: usize, m: usize) -> Vec<Character> {
    let mut quads: Vec<Vec<Quad>> = (0..m).map(|_| (0..n).map(|_| random_quad(rng)).collect()).collect();
    if m > 0 {
        for i in 0..n {
            let (mut sa, mut sb) = (BigRational::zero(), BigRational::zero());
            for q in quads.iter().take(m - 1) {
                sa += &q[i].a;
                sb += &q[i].b;
            }
            quads[m - 1][i].a = -sa;
            quads[m - 1][i].b = -sb;
        }
    }
    quads.into_iter().map(Character::new).collect()
}

fn random_coord(rng: &mut StdRng) -> FormalReal {
    let mut out = FormalReal::zero();
    if rng.gen_bool(0.5) {
        out += &FormalReal::rational(rat(rng.gen_range(-2..=2), rng.gen_range(1..=2)));
    }
    if rng.gen_bool(0.5) {
        out += &FormalReal::pi(rat(rng.gen_range(-2..=2), rng.gen_range(1..=2)));
    }
    if rng.gen_bool(0.3) {
        let name = SYMBOLS[rng.gen_range(0..SYMBOLS.len())];
        out += &FormalReal::symbol(name, rat(rng.gen_range(1..=2), 1));
    }
    out
}

/// Strictly triangular brackets (`c` above `a` and `b`) that pass Jacobi.
fn random_brackets(rng: &mut StdRng, m: usize) -> Brackets {
    for _ in 0..20 {
        let mut b = Brackets { m, ..Brackets::default() };
        for c in 0..m {
            for a in 0..c {
                for bb in 0..c {
                    if a < bb && rng.gen_bool(0.4) {
                        b.c.push(BracketTerm::new(a, bb, c, random_coeff(rng)));
                    }
                    if rng.gen_bool(0.4) {
                        b.d.push(BracketTerm::new(a, bb, c, random_coeff(rng)));
                    }
                }
            }
        }
        if ce_from_brackets(&b).is_ok() {
            return b;
        }
    }
    Brackets { m, ..Brackets::default() }
}

/// A valid spec with `n ≤ 2`, `m ≤ 3`.
pub fn random_spec(seed: u64) -> ModelSpec {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(0..=2);
    let mut m = rng.gen_range(0..=3);
    if n + m == 0 {
        m = 1;
    }
    let family = rng.gen_range(0..3);
    let (alphas, brackets) = match family {
        // abelian fiber, arbitrary unimodular weights
        0 => (random_weights(&mut rng, n, m), Brackets { m, ..Brackets::default() }),
        // nilpotent fiber, trivial action
        1 => (vec![Character::trivial(n); m], random_brackets(&mut rng, m)),
        // [Y1, Ȳ2] ∝ Y3 with weights α3 = α1·ᾱ2
        _ => {
            m = 3;
            let q1: Vec<Quad> = (0..n).map(|_| random_quad(&mut rng)).collect();
            let q2: Vec<Quad> =
                q1.iter().map(|q| Quad::new(-&q.a, -&q.b, small(&mut rng, -2, 2), small(&mut rng, -2, 2))).collect();
            let a1 = Character::new(q1);
            let a2 = Character::new(q2);
            let a3 = &a1 * &a2.conj();
            let d = vec![BracketTerm::new(0, 1, 2, random_coeff(&mut rng))];
            (vec![a1, a2, a3], Brackets { m, d, ..Brackets::default() })
        }
    };
    let lattice = (0..2 * n).map(|_| LatticeGen::new((0..2 * n).map(|_| random_coord(&mut rng)).collect())).collect();
    ModelSpec {
        n,
        m,
        alphas,
        nilpotent: NilpotentStructure::Brackets(brackets),
        lattice,
        symbols: SYMBOLS.iter().map(|s| s.to_string()).collect(),
        nilmanifold_assumption_asserted: true,
    }
}

pub fn random_model(seed: u64) -> Model {
    let spec = random_spec(seed);
    Model::new(spec.clone()).unwrap_or_else(|e| panic!("seed {seed} gave an invalid spec: {e}\n{spec:?}"))
}

type C = Complex<BigRational>;

fn to_complex(v: &GaussRat) -> C {
    Complex::new(v.re.clone(), v.im.clone())
}

/// Rank by elimination over `Complex<BigRational>`, with rows shuffled
/// and pivots chosen at random among the nonzero candidates.
pub fn oracle_rank(m: &Matrix, rng: &mut StdRng) -> usize {
    let mut rows: Vec<Vec<C>> = (0..m.rows()).map(|i| m.row(i).iter().map(to_complex).collect()).collect();
    rows.shuffle(rng);
    let cols = m.cols();
    let mut rank = 0;
    let mut col_order: Vec<usize> = (0..cols).collect();
    col_order.shuffle(rng);
    for &c in &col_order {
        let candidates: Vec<usize> = (rank..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
        let Some(&p) = candidates.choose(rng) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in (rank + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in 0..cols {
                if !rows[rank][j].is_zero() {
                    let delta = &f * &rows[rank][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
