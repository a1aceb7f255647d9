//! The finite model of a solvmanifold `Cⁿ ⋉_φ N / Γ`.
//!
//! Each `w_j` carries the weight `α_j` of the diagonal action. A monomial
//! `x_I w_J x̄_K w̄_L` enters the subcomplex `B` when its unitary weight
//! `β_J γ_L` is trivial on the lattice of `Cⁿ`, where `β_j` and `γ_j` are the
//! unitary characters equivalent to `α_j` and `ᾱ_j`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::characters::{Character, LatticeGen};
use crate::complex::BigradedComplex;
use crate::error::{BracketViolation, ExteriorError, ModelError};
use crate::exterior::{
    ce_from_brackets, Brackets, DiffKind, Differential, DifferentialSpec, Form, Generator, Monomial, Universe,
    MAX_GENERATORS,
};

/// Bound on `m` for the star condition, which visits `4^m` index pairs.
pub const DEFAULT_STAR_BOUND: usize = 12;

/// How the complex structure of the nilpotent factor is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotentStructure {
    Brackets(Brackets),
    /// ∂̄-images of `w_j` and `w̄_j` over the universe `(0, m)`; missing
    /// generators are closed.
    DbarImages(BTreeMap<Generator, Form>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub n: usize,
    pub m: usize,
    /// Diagonal weights of the action on `n^{1,0}`, each a character of `Cⁿ`.
    pub alphas: Vec<Character>,
    pub nilpotent: NilpotentStructure,
    /// Generators of the lattice of `Cⁿ`, in coordinates `(x₁, y₁, …)`.
    pub lattice: Vec<LatticeGen>,
    /// Names treated as rationally independent of each other and of π.
    pub symbols: Vec<String>,
    /// The user's assertion that the nilmanifold Dolbeault cohomology is
    /// computed by left-invariant forms; not decidable from the data.
    pub nilmanifold_assumption_asserted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Shape,
    Unimodularity,
    WeightCompatibility,
    Integrability,
    Jacobi,
    Reality,
    SquareZero,
    LatticeRank,
    UndeclaredSymbol,
    NilmanifoldAssumption,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Condition::Shape => "shape",
            Condition::Unimodularity => "unimodularity",
            Condition::WeightCompatibility => "weight compatibility",
            Condition::Integrability => "integrability",
            Condition::Jacobi => "Jacobi identity",
            Condition::Reality => "reality",
            Condition::SquareZero => "square zero",
            Condition::LatticeRank => "lattice rank",
            Condition::UndeclaredSymbol => "undeclared symbol",
            Condition::NilmanifoldAssumption => "nilmanifold assumption",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    fn push(&mut self, condition: Condition, message: impl Into<String>) {
        self.violations.push(Violation { condition, message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.condition, v.message)?;
        }
        Ok(())
    }
}

/// Which Lie algebra a left-invariant complex is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    /// The nilpotent factor alone.
    N,
    /// The direct sum `a ⊕ n` with abelian `a = Cⁿ`.
    AN,
    /// The semidirect product, with `w_j = α_j⁻¹ y_j` twisted by `d log α_j`.
    G,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::N => "n",
            Which::AN => "a+n",
            Which::G => "g",
        })
    }
}

impl FromStr for Which {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n" => Ok(Which::N),
            "a+n" => Ok(Which::AN),
            "g" => Ok(Which::G),
            other => Err(format!("unknown algebra '{other}', expected n, a+n or g")),
        }
    }
}

impl ModelSpec {
    pub fn universe(&self) -> Universe {
        Universe::new(self.n, self.m)
    }

    /// Runs every check and lists all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.shape_report();
        if !report.is_valid() {
            return report;
        }
        if !self.nilmanifold_assumption_asserted {
            report.push(
                Condition::NilmanifoldAssumption,
                "assert_nilmanifold_dolbeault must be true: the nilmanifold Dolbeault isomorphism is a hypothesis",
            );
        }
        for (g, gen) in self.lattice.iter().enumerate() {
            for (k, coord) in gen.coords.iter().enumerate() {
                for name in coord.symbol_coeffs().keys() {
                    if !self.symbols.contains(name) {
                        report.push(
                            Condition::UndeclaredSymbol,
                            format!("lattice[{g}][{k}] uses undeclared symbol '{name}'"),
                        );
                    }
                }
            }
        }
        for i in 0..self.n {
            let (mut sa, mut sb) = (num_rational::BigRational::zero(), num_rational::BigRational::zero());
            for alpha in &self.alphas {
                sa += &alpha.coeffs()[i].a;
                sb += &alpha.coeffs()[i].b;
            }
            if !sa.is_zero() || !sb.is_zero() {
                report.push(
                    Condition::Unimodularity,
                    format!("real exponents of the weights sum to ({sa})*x{k} + ({sb})*y{k}, not 0", k = i + 1),
                );
            }
        }
        match self.structure_differential() {
            Err(e) => push_structure_error(&mut report, e),
            Ok(dbar) => {
                if let Err(e) = dbar.total() {
                    push_structure_error(&mut report, e);
                }
                self.check_weights(&dbar, &mut report);
            }
        }
        report
    }

    /// Sizes of weights, lattice and structure data.
    fn shape_report(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if 2 * (self.n + self.m) > MAX_GENERATORS {
            report.push(Condition::Shape, format!("n + m = {} exceeds {}", self.n + self.m, MAX_GENERATORS / 2));
            return report;
        }
        if self.alphas.len() != self.m {
            report.push(Condition::Shape, format!("{} weights given for m = {}", self.alphas.len(), self.m));
        }
        for (j, alpha) in self.alphas.iter().enumerate() {
            if alpha.dim() != self.n {
                report.push(
                    Condition::Shape,
                    format!("weight {} has {} coordinates, expected n = {}", j + 1, alpha.dim(), self.n),
                );
            }
        }
        if self.lattice.len() != 2 * self.n {
            report.push(
                Condition::LatticeRank,
                format!(
                    "lattice has {} generators, a lattice of C^{} needs {}",
                    self.lattice.len(),
                    self.n,
                    2 * self.n
                ),
            );
        }
        for (g, gen) in self.lattice.iter().enumerate() {
            if gen.coords.len() != 2 * self.n {
                report.push(
                    Condition::LatticeRank,
                    format!("lattice[{g}] has {} coordinates, expected {}", gen.coords.len(), 2 * self.n),
                );
            }
        }
        match &self.nilpotent {
            NilpotentStructure::Brackets(b) if b.m != self.m => {
                report.push(Condition::Shape, format!("brackets are for m = {}, spec has m = {}", b.m, self.m));
            }
            NilpotentStructure::DbarImages(images) => {
                let u = Universe::new(0, self.m);
                for (gen, form) in images {
                    let ok = match gen {
                        Generator::W(j) | Generator::WBar(j) => *j < self.m,
                        _ => false,
                    };
                    if !ok || form.universe() != u {
                        report.push(Condition::Shape, format!("image of {gen} is not a form over w, wb generators"));
                    }
                }
            }
            _ => {}
        }
        report
    }

    /// ∂̄ of the nilpotent factor over universe `(0, m)`.
    fn structure_differential(&self) -> Result<Differential, ExteriorError> {
        match &self.nilpotent {
            NilpotentStructure::Brackets(b) => ce_from_brackets(b),
            NilpotentStructure::DbarImages(images) => {
                let mut spec = DifferentialSpec::new(Universe::new(0, self.m), DiffKind::Dbar);
                for (gen, form) in images {
                    spec.set_image(*gen, form.clone());
                }
                spec.validate()
            }
        }
    }

    /// Every term of `∂̄(gen)` must carry the weight of `gen`.
    fn check_weights(&self, dbar: &Differential, report: &mut ValidationReport) {
        let u = dbar.universe();
        for gen in u.generators() {
            let own = self.full_weight_in(&u, Monomial::generator(&u, gen));
            for mon in dbar.image(gen).terms().keys() {
                let w = self.full_weight_in(&u, *mon);
                if w != own {
                    report.push(
                        Condition::WeightCompatibility,
                        format!("d-bar {gen} has term {} of weight {w}, but {gen} has weight {own}", mon.display(&u)),
                    );
                }
            }
        }
    }

    fn full_weight_in(&self, u: &Universe, mon: Monomial) -> Character {
        let parts = mon.parts(u);
        let mut acc = Character::trivial(self.n);
        for j in parts.w {
            acc = &acc * &self.alphas[j].inv();
        }
        for l in parts.wbar {
            acc = &acc * &self.alphas[l].conj().inv();
        }
        acc
    }
}

fn push_structure_error(report: &mut ValidationReport, e: ExteriorError) {
    match e {
        ExteriorError::Brackets(vs) => {
            for v in vs {
                let condition = match v {
                    BracketViolation::Integrability { .. } => Condition::Integrability,
                    BracketViolation::Jacobi { .. } => Condition::Jacobi,
                    BracketViolation::Reality { .. } => Condition::Reality,
                    BracketViolation::NotAntisymmetric { .. } | BracketViolation::IndexOutOfRange { .. } => {
                        Condition::Shape
                    }
                };
                report.push(condition, v.to_string());
            }
        }
        ExteriorError::WrongBidegree { .. } => report.push(Condition::Integrability, e.to_string()),
        other => report.push(Condition::SquareZero, other.to_string()),
    }
}

/// A spec whose structure data produced a valid differential.
#[derive(Clone, Debug)]
pub struct Model {
    spec: ModelSpec,
    dbar_n: Differential,
}

impl Model {
    /// Validates the spec and refuses it on any failure.
    pub fn new(spec: ModelSpec) -> Result<Self, ModelError> {
        let report = spec.validate();
        if !report.is_valid() {
            return Err(ModelError::Invalid(report));
        }
        Self::new_unchecked(spec)
    }

    /// Skips the arithmetic conditions (unimodularity, weights, symbols, the
    /// assumption flag) but still requires consistent shapes and a valid
    /// differential. Meant for exercising failure paths downstream.
    pub fn new_unchecked(spec: ModelSpec) -> Result<Self, ModelError> {
        let report = spec.shape_report();
        if !report.is_valid() {
            return Err(ModelError::Invalid(report));
        }
        let dbar_n = spec.structure_differential()?;
        Ok(Self { spec, dbar_n })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn universe(&self) -> Universe {
        self.spec.universe()
    }

    pub fn beta(&self, j: usize) -> Character {
        self.spec.alphas[j].unitary_equivalent()
    }

    pub fn gamma(&self, j: usize) -> Character {
        self.spec.alphas[j].conj().unitary_equivalent()
    }

    /// `Π_{j∈J} β_j · Π_{l∈L} γ_l`; independent of the `x`-indices.
    pub fn monomial_unitary_weight(&self, mon: Monomial) -> Character {
        let parts = mon.parts(&self.universe());
        let mut acc = Character::trivial(self.spec.n);
        for j in parts.w {
            acc = &acc * &self.beta(j);
        }
        for l in parts.wbar {
            acc = &acc * &self.gamma(l);
        }
        acc
    }

    /// `Π_{j∈J} α_j⁻¹ · Π_{l∈L} ᾱ_l⁻¹`, the weight the action scales the monomial by.
    pub fn full_weight(&self, mon: Monomial) -> Character {
        self.spec.full_weight_in(&self.universe(), mon)
    }

    /// The function coefficient of the monomial as a form on the group:
    /// `Π_{j∈J} α_j⁻¹β_j · Π_{l∈L} ᾱ_l⁻¹γ_l`.
    pub fn frame_character(&self, mon: Monomial) -> Character {
        &self.full_weight(mon) * &self.monomial_unitary_weight(mon)
    }

    pub fn passes_filter(&self, mon: Monomial) -> bool {
        self.monomial_unitary_weight(mon)
            .restricts_trivially(&self.spec.lattice)
            .expect("unitary weights over a shape-checked lattice")
    }

    /// ∂̄ of the left-invariant complex of the chosen algebra.
    pub fn dbar(&self, which: Which) -> Result<Differential, ModelError> {
        let u = self.universe();
        match which {
            Which::N => Ok(self.dbar_n.clone()),
            Which::AN => Ok(self.dbar_n.embed(u)),
            Which::G => {
                let mut twist = DifferentialSpec::new(u, DiffKind::Dbar);
                for (j, alpha) in self.spec.alphas.iter().enumerate() {
                    let dbar_log = alpha.dbar_log();
                    let del_log = alpha.del_log();
                    let mut lambda = Form::zero(u);
                    let mut mu = Form::zero(u);
                    for i in 0..self.spec.n {
                        let xb = Monomial::generator(&u, Generator::XBar(i));
                        lambda.add_term(xb, &dbar_log[i]);
                        mu.add_term(xb, &del_log[i].conj());
                    }
                    twist.set_image(Generator::W(j), lambda.wedge(&Form::generator(u, Generator::W(j))).neg());
                    twist.set_image(Generator::WBar(j), mu.wedge(&Form::generator(u, Generator::WBar(j))).neg());
                }
                Ok(self.dbar_n.embed(u).plus(&twist)?)
            }
        }
    }

    /// The subcomplex `B` of monomials with lattice-trivial unitary weight,
    /// under the `a ⊕ n` differential.
    pub fn build_b(&self) -> Result<BComplex, ModelError> {
        let u = self.universe();
        let mut weights = HashMap::new();
        let mut frames = HashMap::new();
        let mut passing = HashMap::new();
        for k in 0..=u.generator_count() {
            for mon in u.monomials_of_degree(k) {
                let ok = self.passes_filter(mon);
                passing.insert(mon, ok);
                if ok {
                    weights.insert(mon, self.monomial_unitary_weight(mon));
                    frames.insert(mon, self.frame_character(mon));
                }
            }
        }
        let complex = BigradedComplex::new(self.dbar(Which::AN)?, |mon| passing[&mon])?;
        Ok(BComplex { complex, weights, frames })
    }

    /// Whether every `β_J γ_L` that is trivial on the lattice is trivial.
    pub fn star_condition_check(&self, bound: usize) -> Result<bool, ModelError> {
        let m = self.spec.m;
        if m > bound {
            return Err(ModelError::StarBoundExceeded { m, bound });
        }
        let betas: Vec<Character> = (0..m).map(|j| self.beta(j)).collect();
        let gammas: Vec<Character> = (0..m).map(|j| self.gamma(j)).collect();
        for mask in 0u64..(1u64 << (2 * m)) {
            let mut acc = Character::trivial(self.spec.n);
            for j in 0..m {
                if mask & (1 << j) != 0 {
                    acc = &acc * &betas[j];
                }
                if mask & (1 << (m + j)) != 0 {
                    acc = &acc * &gammas[j];
                }
            }
            if !acc.is_trivial() && acc.restricts_trivially(&self.spec.lattice)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The built subcomplex with the weight labels of its monomials.
#[derive(Clone, Debug)]
pub struct BComplex {
    complex: BigradedComplex,
    weights: HashMap<Monomial, Character>,
    frames: HashMap<Monomial, Character>,
}

impl BComplex {
    pub fn complex(&self) -> &BigradedComplex {
        &self.complex
    }

    /// Unitary weight `β_J γ_L` of a basis monomial.
    pub fn weight(&self, mon: Monomial) -> Option<&Character> {
        self.weights.get(&mon)
    }

    /// Function coefficient of a basis monomial as a form on the group.
    pub fn frame(&self, mon: Monomial) -> Option<&Character> {
        self.frames.get(&mon)
    }
}
