//! JSON manifests describing a model.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "n": 1,
//!   "m": 2,
//!   "alphas": [[[1, 0, 0, 0]], [[-1, 0, 0, 0]]],
//!   "nilpotent": { "brackets": { "C": [], "D": [] } },
//!   "lattice": [["a", "0"], ["0", "2*pi"]],
//!   "symbols": ["a"],
//!   "assert_nilmanifold_dolbeault": true
//! }
//! ```
//!
//! Each weight is a list of `n` quadruples `[a, b, c, d]` for the exponent
//! `Σ (a x + b y) + i Σ (c x + d y)`. Bracket entries are `[a, b, c, coeff]`
//! with 1-based indices. `dbar_images` maps `w<k>`/`wb<k>` to form
//! expressions in `w`, `wb`.

use std::collections::BTreeMap;

use dolbeault_core::{
    BracketTerm, Brackets, Character, Form, Generator, LatticeGen, ModelSpec, NilpotentStructure, Quad, Universe,
};
use serde::{Deserialize, Serialize};

use crate::literal::{parse_form, parse_formal_real, parse_gauss, parse_generator, parse_rational, LiteralError};

pub const SCHEMA_VERSION: u32 = 1;

/// A number given either as a JSON integer or as a literal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(v) => v.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

pub type Entry = (usize, usize, usize, Scalar);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketData {
    /// `Y_c`-components of `[Y_a, Y_b]`.
    #[serde(rename = "C", default)]
    pub c: Vec<Entry>,
    /// `Ybar_c`-components of `[Y_a, Y_b]`; nonzero entries are rejected.
    #[serde(rename = "Cbar", default)]
    pub cbar: Vec<Entry>,
    /// `Y_c`-components of `[Y_a, Ybar_b]`.
    #[serde(rename = "D", default)]
    pub d: Vec<Entry>,
    /// `Ybar_c`-components of `[Y_a, Ybar_b]`; derived from `D` when omitted.
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Nilpotent {
    Brackets(BracketData),
    DbarImages(BTreeMap<String, String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema_version: u32,
    pub n: usize,
    pub m: usize,
    pub alphas: Vec<Vec<Vec<Scalar>>>,
    pub nilpotent: Nilpotent,
    pub lattice: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub symbols: Vec<String>,
    #[serde(default)]
    pub assert_nilmanifold_dolbeault: Option<bool>,
}

/// One schema problem with its JSON path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }

    fn literal(path: impl Into<String>, e: LiteralError) -> Self {
        Self::new(path, e.to_string())
    }
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Parses manifest text into a spec; every error carries a JSON path.
pub fn parse_manifest(text: &str) -> Result<ModelSpec, Vec<SchemaError>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let manifest: Manifest = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        vec![SchemaError::new(if path.is_empty() { ".".to_string() } else { path }, e.inner().to_string())]
    })?;
    manifest.to_spec()
}

impl Manifest {
    pub fn to_spec(&self) -> Result<ModelSpec, Vec<SchemaError>> {
        let mut errors = Vec::new();
        if self.schema_version != SCHEMA_VERSION {
            errors.push(SchemaError::new(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        let assumption = match self.assert_nilmanifold_dolbeault {
            Some(v) => v,
            None => {
                errors.push(SchemaError::new(
                    "assert_nilmanifold_dolbeault",
                    "missing field: the nilmanifold Dolbeault isomorphism hypothesis must be asserted explicitly",
                ));
                false
            }
        };
        if 2 * (self.n + self.m) > dolbeault_core::exterior::MAX_GENERATORS {
            errors.push(SchemaError::new("n", "n + m must be at most 32"));
            return Err(errors);
        }

        let mut alphas = Vec::new();
        for (j, weight) in self.alphas.iter().enumerate() {
            let mut quads = Vec::new();
            for (i, quad) in weight.iter().enumerate() {
                if quad.len() != 4 {
                    errors.push(SchemaError::new(format!("alphas[{j}][{i}]"), "expected [a, b, c, d]"));
                    continue;
                }
                let parsed: Vec<_> = quad
                    .iter()
                    .enumerate()
                    .filter_map(|(k, v)| match parse_rational(&v.text()) {
                        Ok(r) => Some(r),
                        Err(e) => {
                            errors.push(SchemaError::literal(format!("alphas[{j}][{i}][{k}]"), e));
                            None
                        }
                    })
                    .collect();
                if let [a, b, c, d] = parsed.as_slice() {
                    quads.push(Quad::new(a.clone(), b.clone(), c.clone(), d.clone()));
                }
            }
            alphas.push(Character::new(quads));
        }

        let nilpotent = match &self.nilpotent {
            Nilpotent::Brackets(data) => {
                let convert = |entries: &[Entry], name: &str, errors: &mut Vec<SchemaError>| -> Vec<BracketTerm> {
                    let mut out = Vec::new();
                    for (k, (a, b, c, coeff)) in entries.iter().enumerate() {
                        let path = format!("nilpotent.brackets.{name}[{k}]");
                        if [*a, *b, *c].iter().any(|&v| v == 0 || v > self.m) {
                            errors.push(SchemaError::new(&path, format!("indices must lie in 1..={}", self.m)));
                            continue;
                        }
                        match parse_gauss(&coeff.text()) {
                            Ok(v) => out.push(BracketTerm::new(a - 1, b - 1, c - 1, v)),
                            Err(e) => errors.push(SchemaError::literal(format!("{path}[3]"), e)),
                        }
                    }
                    out
                };
                let brackets = Brackets {
                    m: self.m,
                    c: convert(&data.c, "C", &mut errors),
                    cbar: convert(&data.cbar, "Cbar", &mut errors),
                    d: convert(&data.d, "D", &mut errors),
                    e: data.e.as_ref().map(|e| convert(e, "E", &mut errors)),
                };
                NilpotentStructure::Brackets(brackets)
            }
            Nilpotent::DbarImages(images) => {
                let u = Universe::new(0, self.m);
                let mut out: BTreeMap<Generator, Form> = BTreeMap::new();
                for (key, expr) in images {
                    let path = format!("nilpotent.dbar_images.{key}");
                    let gen = match parse_generator(key, &u) {
                        Ok(g) => g,
                        Err(e) => {
                            errors.push(SchemaError::literal(&path, e));
                            continue;
                        }
                    };
                    match parse_form(expr, u) {
                        Ok(f) => {
                            out.insert(gen, f);
                        }
                        Err(e) => errors.push(SchemaError::literal(&path, e)),
                    }
                }
                NilpotentStructure::DbarImages(out)
            }
        };

        let mut lattice = Vec::new();
        for (g, gen) in self.lattice.iter().enumerate() {
            let mut coords = Vec::new();
            for (k, v) in gen.iter().enumerate() {
                match parse_formal_real(&v.text()) {
                    Ok(r) => coords.push(r),
                    Err(e) => errors.push(SchemaError::literal(format!("lattice[{g}][{k}]"), e)),
                }
            }
            lattice.push(LatticeGen::new(coords));
        }

        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(ModelSpec {
            n: self.n,
            m: self.m,
            alphas,
            nilpotent,
            lattice,
            symbols: self.symbols.clone(),
            nilmanifold_assumption_asserted: assumption,
        })
    }
}
