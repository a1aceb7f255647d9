//! The bigraded exterior algebra over `x_i, w_j, x̄_i, w̄_j` and its
//! derivations.
//!
//! A [`Universe`] fixes `n` abelian and `m` nilpotent holomorphic generators.
//! Monomials are bitmasks whose bit order is the canonical order
//! `x₁…x_n, w₁…w_m, x̄₁…x̄_n, w̄₁…w̄_m`, so a stored monomial is always the
//! wedge of its generators in that order and every product is normalized by
//! its Koszul sign.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{BracketViolation, ExteriorError};
use crate::scalars::GaussRat;

/// Shapes above this many generators do not fit the bitmask representation.
pub const MAX_GENERATORS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    pub n: usize,
    pub m: usize,
}

impl Universe {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(2 * (n + m) <= MAX_GENERATORS, "too many generators: n = {n}, m = {m}");
        Self { n, m }
    }

    /// Complex dimension `n + m`.
    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn generator_count(&self) -> usize {
        2 * self.dim()
    }

    pub fn position(&self, gen: Generator) -> u32 {
        let (n, m) = (self.n, self.m);
        let pos = match gen {
            Generator::X(i) => {
                assert!(i < n);
                i
            }
            Generator::W(j) => {
                assert!(j < m);
                n + j
            }
            Generator::XBar(i) => {
                assert!(i < n);
                n + m + i
            }
            Generator::WBar(j) => {
                assert!(j < m);
                2 * n + m + j
            }
        };
        pos as u32
    }

    pub fn generator_at(&self, pos: u32) -> Generator {
        let (n, m) = (self.n, self.m);
        let p = pos as usize;
        assert!(p < self.generator_count());
        if p < n {
            Generator::X(p)
        } else if p < n + m {
            Generator::W(p - n)
        } else if p < 2 * n + m {
            Generator::XBar(p - n - m)
        } else {
            Generator::WBar(p - 2 * n - m)
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.generator_count() as u32).map(|p| self.generator_at(p))
    }

    fn full_mask(&self) -> u64 {
        let k = self.generator_count();
        if k == 64 {
            u64::MAX
        } else {
            (1u64 << k) - 1
        }
    }

    /// Mask of the `(1,0)` generators `x_i, w_j`.
    pub fn holomorphic_mask(&self) -> u64 {
        (1u64 << self.dim()) - 1
    }

    pub fn volume(&self) -> Monomial {
        Monomial(self.full_mask())
    }

    /// All monomials of bidegree `(p, q)` in canonical order.
    pub fn monomials(&self, p: usize, q: usize) -> Vec<Monomial> {
        let d = self.dim();
        if p > d || q > d {
            return Vec::new();
        }
        let holo = subsets(d, p);
        let anti = subsets(d, q);
        let mut out: Vec<Monomial> =
            holo.iter().flat_map(|&h| anti.iter().map(move |&a| Monomial(h | (a << d)))).collect();
        out.sort();
        out
    }

    /// All monomials of total degree `k` in canonical order.
    pub fn monomials_of_degree(&self, k: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = subsets(self.generator_count(), k).into_iter().map(Monomial).collect();
        out.sort();
        out
    }
}

fn subsets(size: usize, k: usize) -> Vec<u64> {
    fn go(start: usize, size: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..size {
            if size - i < k {
                break;
            }
            go(i + 1, size, k - 1, acc | (1u64 << i), out);
        }
    }
    let mut out = Vec::new();
    go(0, size, k, 0, &mut out);
    out
}

/// A single generator, with 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X(usize),
    W(usize),
    XBar(usize),
    WBar(usize),
}

impl Generator {
    pub fn conj(self) -> Generator {
        match self {
            Generator::X(i) => Generator::XBar(i),
            Generator::W(j) => Generator::WBar(j),
            Generator::XBar(i) => Generator::X(i),
            Generator::WBar(j) => Generator::W(j),
        }
    }

    pub fn bidegree(self) -> (usize, usize) {
        match self {
            Generator::X(_) | Generator::W(_) => (1, 0),
            Generator::XBar(_) | Generator::WBar(_) => (0, 1),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(i) => write!(f, "x{}", i + 1),
            Generator::W(j) => write!(f, "w{}", j + 1),
            Generator::XBar(i) => write!(f, "xb{}", i + 1),
            Generator::WBar(j) => write!(f, "wb{}", j + 1),
        }
    }
}

/// The four index sets `(I, J, K, L)` of `x_I ∧ w_J ∧ x̄_K ∧ w̄_L`, 0-based and increasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndexSets {
    pub x: Vec<usize>,
    pub w: Vec<usize>,
    pub xbar: Vec<usize>,
    pub wbar: Vec<usize>,
}

/// A canonical wedge monomial, relative to some [`Universe`].
///
/// Ordered first by degree, then lexicographically by generator sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn generator(universe: &Universe, gen: Generator) -> Self {
        Monomial(1u64 << universe.position(gen))
    }

    pub fn from_parts(universe: &Universe, parts: &IndexSets) -> Self {
        let mut bits = 0u64;
        for &i in &parts.x {
            bits |= 1 << universe.position(Generator::X(i));
        }
        for &j in &parts.w {
            bits |= 1 << universe.position(Generator::W(j));
        }
        for &i in &parts.xbar {
            bits |= 1 << universe.position(Generator::XBar(i));
        }
        for &j in &parts.wbar {
            bits |= 1 << universe.position(Generator::WBar(j));
        }
        Monomial(bits)
    }

    pub fn parts(self, universe: &Universe) -> IndexSets {
        let mut out = IndexSets::default();
        for gen in self.generators(universe) {
            match gen {
                Generator::X(i) => out.x.push(i),
                Generator::W(j) => out.w.push(j),
                Generator::XBar(i) => out.xbar.push(i),
                Generator::WBar(j) => out.wbar.push(j),
            }
        }
        out
    }

    pub fn generators(self, universe: &Universe) -> impl Iterator<Item = Generator> + '_ {
        let universe = *universe;
        positions(self.0).map(move |p| universe.generator_at(p))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn bidegree(self, universe: &Universe) -> (usize, usize) {
        let holo = universe.holomorphic_mask();
        ((self.0 & holo).count_ones() as usize, (self.0 & !holo).count_ones() as usize)
    }

    pub fn contains(self, universe: &Universe, gen: Generator) -> bool {
        self.0 & (1 << universe.position(gen)) != 0
    }

    pub fn complement(self, universe: &Universe) -> Monomial {
        Monomial(universe.full_mask() & !self.0)
    }

    /// Canonical form and sign of the conjugate monomial: `x̄_I w̄_J x_K w_L`
    /// reordered, which costs `(−1)^{pq}`.
    pub fn conj(self, universe: &Universe) -> (i8, Monomial) {
        let d = universe.dim();
        let holo = self.0 & universe.holomorphic_mask();
        let anti = self.0 >> d;
        let (p, q) = self.bidegree(universe);
        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
        (sign, Monomial(anti | (holo << d)))
    }

    pub fn display(self, universe: &Universe) -> MonomialDisplay {
        MonomialDisplay { mon: self, universe: *universe }
    }
}

fn positions(mut bits: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let p = bits.trailing_zeros();
            bits &= bits - 1;
            Some(p)
        }
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay {
    mon: Monomial,
    universe: Universe,
}

impl fmt::Display for MonomialDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mon.0 == 0 {
            return write!(f, "1");
        }
        for (idx, gen) in self.mon.generators(&self.universe).enumerate() {
            if idx > 0 {
                write!(f, "^")?;
            }
            write!(f, "{gen}")?;
        }
        Ok(())
    }
}

/// Sign of `a ∧ b` relative to the canonical monomial `a | b`, or `None`
/// when they share a generator.
pub fn wedge_sign(a: Monomial, b: Monomial) -> Option<i8> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let inversions: u32 = positions(b.0).map(|j| ((a.0 >> j) >> 1).count_ones()).sum();
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn signed(sign: i8, c: &GaussRat) -> GaussRat {
    if sign > 0 {
        c.clone()
    } else {
        -c
    }
}

/// A finite linear combination of canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    universe: Universe,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Form {
    pub fn zero(universe: Universe) -> Self {
        Self { universe, terms: BTreeMap::new() }
    }

    pub fn one(universe: Universe) -> Self {
        Self::monomial(universe, Monomial::ONE, GaussRat::one())
    }

    pub fn monomial(universe: Universe, mon: Monomial, coeff: GaussRat) -> Self {
        let mut out = Self::zero(universe);
        out.add_term(mon, &coeff);
        out
    }

    pub fn generator(universe: Universe, gen: Generator) -> Self {
        Self::monomial(universe, Monomial::generator(&universe, gen), GaussRat::one())
    }

    /// Builds a form from a coefficient vector over `basis`.
    pub fn from_coords(universe: Universe, basis: &[Monomial], coords: &[GaussRat]) -> Self {
        let mut out = Self::zero(universe);
        for (mon, c) in basis.iter().zip(coords) {
            out.add_term(*mon, c);
        }
        out
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, GaussRat> {
        &self.terms
    }

    pub fn coeff(&self, mon: Monomial) -> GaussRat {
        self.terms.get(&mon).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mon: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mon).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mon);
        }
    }

    /// The common bidegree of all terms; `None` for mixed or zero forms.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|m| m.bidegree(&self.universe));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Zero forms count as homogeneous of every bidegree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    pub fn scale(&self, c: &GaussRat) -> Form {
        let mut out = Form::zero(self.universe);
        for (mon, v) in &self.terms {
            out.add_term(*mon, &(v * c));
        }
        out
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.universe, other.universe, "forms over different universes");
        let mut out = self.clone();
        for (mon, v) in &other.terms {
            out.add_term(*mon, v);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale(&-GaussRat::one())
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.universe, other.universe, "forms over different universes");
        let mut out = Form::zero(self.universe);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = wedge_sign(*a, *b) {
                    out.add_term(Monomial(a.0 | b.0), &signed(sign, &(ca * cb)));
                }
            }
        }
        out
    }

    /// Complex conjugation: swaps barred and unbarred generators and
    /// conjugates coefficients.
    pub fn conj(&self) -> Form {
        let mut out = Form::zero(self.universe);
        for (mon, c) in &self.terms {
            let (sign, image) = mon.conj(&self.universe);
            out.add_term(image, &signed(sign, &c.conj()));
        }
        out
    }

    /// Reinterprets the form in a universe with the same `m` and at least as
    /// many `x`-generators.
    pub fn embed(&self, target: Universe) -> Form {
        assert!(target.m == self.universe.m && target.n >= self.universe.n);
        let mut out = Form::zero(target);
        for (mon, c) in &self.terms {
            let parts = mon.parts(&self.universe);
            out.add_term(Monomial::from_parts(&target, &parts), c);
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mon, c)) in self.terms.iter().enumerate() {
            let zero = num_rational::BigRational::zero();
            let negative = c.re < zero || (c.re.is_zero() && c.im < zero);
            let mag = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mon_txt = mon.display(&self.universe).to_string();
            if mag.is_one() {
                write!(f, "{mon_txt}")?;
            } else if mon.0 == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{mon_txt}")?;
            }
        }
        Ok(())
    }
}

/// Which part of the exterior derivative a derivation represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiffKind {
    /// Raises bidegree by `(0, 1)`.
    Dbar,
    /// Raises bidegree by `(1, 0)`.
    Del,
    /// `d = ∂ + ∂̄`, raising total degree by one.
    Total,
}

/// Generator images of an odd derivation, not yet checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialSpec {
    universe: Universe,
    kind: DiffKind,
    images: Vec<Form>,
}

impl DifferentialSpec {
    /// All generator images zero.
    pub fn new(universe: Universe, kind: DiffKind) -> Self {
        let images = (0..universe.generator_count()).map(|_| Form::zero(universe)).collect();
        Self { universe, kind, images }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn kind(&self) -> DiffKind {
        self.kind
    }

    pub fn set_image(&mut self, gen: Generator, image: Form) {
        assert_eq!(image.universe, self.universe);
        let pos = self.universe.position(gen) as usize;
        self.images[pos] = image;
    }

    pub fn image(&self, gen: Generator) -> &Form {
        &self.images[self.universe.position(gen) as usize]
    }

    /// Checks the bidegree shift of every image and that the Leibniz
    /// extension squares to zero.
    ///
    /// `D²` is an even derivation, so it vanishes once it vanishes on
    /// generators.
    pub fn validate(self) -> Result<Differential, ExteriorError> {
        for gen in self.universe.generators() {
            let (p, q) = gen.bidegree();
            for mon in self.image(gen).terms.keys() {
                let found = mon.bidegree(&self.universe);
                let ok = match self.kind {
                    DiffKind::Dbar => found == (p, q + 1),
                    DiffKind::Del => found == (p + 1, q),
                    DiffKind::Total => found == (p + 1, q) || found == (p, q + 1),
                };
                if !ok {
                    return Err(ExteriorError::WrongBidegree { generator: gen.to_string(), kind: self.kind, found });
                }
            }
        }
        let candidate = Differential { spec: self };
        for gen in candidate.spec.universe.generators() {
            let residual = candidate.apply_linear(candidate.spec.image(gen));
            if !residual.is_zero() {
                return Err(ExteriorError::SquareNonzero {
                    generator: gen.to_string(),
                    residual: residual.to_string(),
                });
            }
        }
        Ok(candidate)
    }
}

/// A derivation whose generator images passed [`DifferentialSpec::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    spec: DifferentialSpec,
}

impl Differential {
    /// The zero ∂̄ (also a valid `Del` or `Total` after [`Self::conjugate`]/[`Self::total`]).
    pub fn zero(universe: Universe) -> Self {
        Differential { spec: DifferentialSpec::new(universe, DiffKind::Dbar) }
    }

    pub fn universe(&self) -> Universe {
        self.spec.universe
    }

    pub fn kind(&self) -> DiffKind {
        self.spec.kind
    }

    pub fn image(&self, gen: Generator) -> &Form {
        self.spec.image(gen)
    }

    pub fn spec(&self) -> &DifferentialSpec {
        &self.spec
    }

    /// Applies the derivation to a monomial by the graded Leibniz rule.
    pub fn apply_monomial(&self, mon: Monomial) -> Form {
        let universe = self.spec.universe;
        let mut out = Form::zero(universe);
        for pos in positions(mon.0) {
            let below = Monomial(mon.0 & ((1u64 << pos) - 1));
            let above = Monomial(mon.0 & !((1u64 << pos) | ((1u64 << pos) - 1)));
            let lead = if below.degree().is_multiple_of(2) { 1 } else { -1 };
            for (t, c) in &self.spec.images[pos as usize].terms {
                let Some(s1) = wedge_sign(below, *t) else { continue };
                let head = Monomial(below.0 | t.0);
                let Some(s2) = wedge_sign(head, above) else { continue };
                out.add_term(Monomial(head.0 | above.0), &signed(lead * s1 * s2, c));
            }
        }
        out
    }

    fn apply_linear(&self, u: &Form) -> Form {
        let mut out = Form::zero(self.spec.universe);
        for (mon, c) in &u.terms {
            for (t, v) in self.apply_monomial(*mon).terms {
                out.add_term(t, &(&v * c));
            }
        }
        out
    }

    /// Applies the derivation to a form; ∂̄ and ∂ only accept forms of pure bidegree.
    pub fn apply(&self, u: &Form) -> Result<Form, ExteriorError> {
        if u.universe != self.spec.universe {
            return Err(ExteriorError::UniverseMismatch);
        }
        if self.spec.kind != DiffKind::Total && !u.is_homogeneous() {
            return Err(ExteriorError::MixedBidegree(u.to_string()));
        }
        Ok(self.apply_linear(u))
    }

    /// The conjugate derivation `ω ↦ conj(D(conj ω))`; sends ∂̄ to ∂ for real
    /// structures.
    pub fn conjugate(&self) -> Differential {
        let universe = self.spec.universe;
        let kind = match self.spec.kind {
            DiffKind::Dbar => DiffKind::Del,
            DiffKind::Del => DiffKind::Dbar,
            DiffKind::Total => DiffKind::Total,
        };
        let mut spec = DifferentialSpec::new(universe, kind);
        for gen in universe.generators() {
            spec.set_image(gen, self.image(gen.conj()).conj());
        }
        Differential { spec }
    }

    /// `d = ∂ + ∂̄` for a real structure whose ∂̄ is `self`.
    pub fn total(&self) -> Result<Differential, ExteriorError> {
        assert_eq!(self.spec.kind, DiffKind::Dbar);
        let del = self.conjugate();
        let universe = self.spec.universe;
        let mut spec = DifferentialSpec::new(universe, DiffKind::Total);
        for gen in universe.generators() {
            spec.set_image(gen, self.image(gen).add(del.image(gen)));
        }
        spec.validate()
    }

    /// Image-wise sum with another derivation of the same kind, revalidated.
    pub fn plus(&self, other: &DifferentialSpec) -> Result<Differential, ExteriorError> {
        assert_eq!(self.spec.kind, other.kind);
        let universe = self.spec.universe;
        let mut spec = DifferentialSpec::new(universe, self.spec.kind);
        for gen in universe.generators() {
            spec.set_image(gen, self.image(gen).add(other.image(gen)));
        }
        spec.validate()
    }

    /// Extends to a universe with more `x`-generators, which stay closed.
    pub fn embed(&self, target: Universe) -> Differential {
        let source = self.spec.universe;
        let mut spec = DifferentialSpec::new(target, self.spec.kind);
        for j in 0..source.m {
            for gen in [Generator::W(j), Generator::WBar(j)] {
                spec.set_image(gen, self.image(gen).embed(target));
            }
        }
        for i in 0..source.n {
            for gen in [Generator::X(i), Generator::XBar(i)] {
                spec.set_image(gen, self.image(gen).embed(target));
            }
        }
        Differential { spec }
    }
}

/// One structure constant: the coefficient of the `c`-th output basis element
/// in the bracket of the `a`-th and `b`-th inputs (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTerm {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub coeff: GaussRat,
}

impl BracketTerm {
    pub fn new(a: usize, b: usize, c: usize, coeff: GaussRat) -> Self {
        Self { a, b, c, coeff }
    }
}

/// Structure constants of a nilpotent Lie algebra with complex structure, in
/// a basis `Y₁…Y_m` of `n^{1,0}`. Brackets `[Ȳ_a, Ȳ_b]` follow by conjugation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Brackets {
    pub m: usize,
    /// `Y_c`-component of `[Y_a, Y_b]`.
    pub c: Vec<BracketTerm>,
    /// `Ȳ_c`-component of `[Y_a, Y_b]`; any nonzero entry breaks integrability.
    pub cbar: Vec<BracketTerm>,
    /// `Y_c`-component of `[Y_a, Ȳ_b]`.
    pub d: Vec<BracketTerm>,
    /// `Ȳ_c`-component of `[Y_a, Ȳ_b]`. Determined by `d` through the real
    /// structure; derived when absent, checked when given.
    pub e: Option<Vec<BracketTerm>>,
}

/// Chevalley–Eilenberg ∂̄ of the complexified algebra on universe `(0, m)`.
///
/// Uses `dξ(A, B) = −ξ([A, B])`, so `∂̄w^c = −Σ D^c_{ab} w^a∧w̄^b` and
/// `∂̄w̄^c = −Σ_{a<b} conj(C^c_{ab}) w̄^a∧w̄^b`.
pub fn ce_from_brackets(brackets: &Brackets) -> Result<Differential, ExteriorError> {
    let m = brackets.m;
    let size = 2 * m;
    let mut violations = Vec::new();
    // table[i][j][k]: coefficient of basis k in [E_i, E_j], with E_a = Y_a, E_{m+a} = Ȳ_a.
    let mut table = vec![vec![vec![GaussRat::zero(); size]; size]; size];

    let in_range = |t: &BracketTerm| t.a < m && t.b < m && t.c < m;
    let all_terms = brackets.c.iter().chain(&brackets.cbar).chain(&brackets.d).chain(brackets.e.iter().flatten());
    for t in all_terms {
        if !in_range(t) {
            violations.push(BracketViolation::IndexOutOfRange { a: t.a, b: t.b, c: t.c, m });
        }
    }
    if !violations.is_empty() {
        return Err(ExteriorError::Brackets(violations));
    }

    for t in &brackets.cbar {
        if !t.coeff.is_zero() {
            violations.push(BracketViolation::Integrability { a: t.a, b: t.b, c: t.c });
        }
    }

    let mut holo: BTreeMap<(usize, usize, usize), GaussRat> = BTreeMap::new();
    for t in &brackets.c {
        if t.a == t.b {
            if !t.coeff.is_zero() {
                violations.push(BracketViolation::NotAntisymmetric { a: t.a, b: t.b, c: t.c });
            }
            continue;
        }
        let (key, val) = if t.a < t.b { ((t.a, t.b, t.c), t.coeff.clone()) } else { ((t.b, t.a, t.c), -&t.coeff) };
        match holo.get(&key) {
            Some(prev) if *prev != val => {
                violations.push(BracketViolation::NotAntisymmetric { a: t.a, b: t.b, c: t.c })
            }
            _ => {
                holo.insert(key, val);
            }
        }
    }
    for (&(a, b, c), v) in &holo {
        table[a][b][c] += v;
        table[b][a][c] -= v;
        let vb = v.conj();
        table[m + a][m + b][m + c] += &vb;
        table[m + b][m + a][m + c] -= &vb;
    }

    let mut mixed: BTreeMap<(usize, usize, usize), GaussRat> = BTreeMap::new();
    for t in &brackets.d {
        *mixed.entry((t.a, t.b, t.c)).or_default() += &t.coeff;
    }
    // [Y_b, Ȳ_a] has Ȳ_c-component −conj(D^c_{ab}).
    let mut derived_e: BTreeMap<(usize, usize, usize), GaussRat> = BTreeMap::new();
    for (&(a, b, c), v) in &mixed {
        if !v.is_zero() {
            derived_e.insert((b, a, c), -&v.conj());
        }
    }
    if let Some(given) = &brackets.e {
        let mut given_e: BTreeMap<(usize, usize, usize), GaussRat> = BTreeMap::new();
        for t in given {
            *given_e.entry((t.a, t.b, t.c)).or_default() += &t.coeff;
        }
        given_e.retain(|_, v| !v.is_zero());
        let keys: std::collections::BTreeSet<_> = given_e.keys().chain(derived_e.keys()).copied().collect();
        for key in keys {
            if given_e.get(&key) != derived_e.get(&key) {
                violations.push(BracketViolation::Reality { a: key.0, b: key.1, c: key.2 });
            }
        }
    }
    for (&(a, b, c), v) in &mixed {
        table[a][m + b][c] += v;
        table[m + b][a][c] -= v;
    }
    for (&(a, b, c), v) in &derived_e {
        table[a][m + b][m + c] += v;
        table[m + b][a][m + c] -= v;
    }

    if !violations.is_empty() {
        return Err(ExteriorError::Brackets(violations));
    }

    let bracket_of = |x: &[GaussRat], k: usize| -> Vec<GaussRat> {
        let mut out = vec![GaussRat::zero(); size];
        for (l, xl) in x.iter().enumerate() {
            if xl.is_zero() {
                continue;
            }
            for (o, v) in table[l][k].iter().enumerate() {
                if !v.is_zero() {
                    out[o] += &(xl * v);
                }
            }
        }
        out
    };
    for i in 0..size {
        for j in (i + 1)..size {
            for k in (j + 1)..size {
                let mut sum = vec![GaussRat::zero(); size];
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (o, v) in bracket_of(&table[x][y], z).iter().enumerate() {
                        sum[o] += v;
                    }
                }
                if sum.iter().any(|v| !v.is_zero()) {
                    violations.push(BracketViolation::Jacobi { i, j, k });
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(ExteriorError::Brackets(violations));
    }

    // In universe (0, m) the position of generator ξ^k equals the basis index k.
    let universe = Universe::new(0, m);
    let mut spec = DifferentialSpec::new(universe, DiffKind::Dbar);
    for k in 0..size {
        let mut image = Form::zero(universe);
        for i in 0..size {
            for j in (i + 1)..size {
                let v = &table[i][j][k];
                let mon = Monomial((1u64 << i) | (1u64 << j));
                let is_dbar_part = if k < m { i < m && j >= m } else { i >= m };
                if is_dbar_part && !v.is_zero() {
                    image.add_term(mon, &-v);
                }
            }
        }
        spec.set_image(universe.generator_at(k as u32), image);
    }
    let dbar = spec.validate()?;
    dbar.total()?;
    Ok(dbar)
}
