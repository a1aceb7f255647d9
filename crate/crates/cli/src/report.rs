//! Report assembly and rendering.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use dolbeault_core::{
    cohomology, de_rham, harmonic_space, hodge_symmetry_check, serre_duality_check, CohomologyTable, Form, Model,
    ModelError,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "dolbeault";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub source: String,
    pub manifest_sha256: String,
}

impl Provenance {
    pub fn new(source: &str, manifest_text: &str) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            source: source.to_string(),
            manifest_sha256: hex::encode(Sha256::digest(manifest_text.as_bytes())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeSumEntry {
    pub k: usize,
    pub hodge_sum: usize,
    pub betti: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// `hodge_symmetry[p][q]`: conjugation carries `B^{p,q}` onto `B^{q,p}`.
    pub hodge_symmetry: Vec<Vec<bool>>,
    pub serre_duality: bool,
    /// Absent when `m` exceeds the enumeration bound.
    pub star_condition: Option<bool>,
    pub hodge_sum: bool,
}

/// Representatives keyed by `"p,q"`, each form in text literal syntax.
pub type Representatives = BTreeMap<String, Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub provenance: Provenance,
    pub n: usize,
    pub m: usize,
    /// `hodge[p][q] = dim H^{p,q}(B)`.
    pub hodge: Vec<Vec<usize>>,
    pub harmonic: Vec<Vec<usize>>,
    pub betti: Vec<usize>,
    pub hodge_sum: Vec<HodgeSumEntry>,
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Representatives>,
}

pub fn representatives(table: &CohomologyTable, only: Option<(usize, usize)>) -> Representatives {
    let mut out = BTreeMap::new();
    for p in 0..=table.top {
        for q in 0..=table.top {
            if only.is_none_or(|b| b == (p, q)) {
                out.insert(format!("{p},{q}"), table.representatives[p][q].iter().map(Form::to_string).collect());
            }
        }
    }
    out
}

pub fn build_report(
    model: &Model,
    provenance: Provenance,
    star_bound: usize,
    with_representatives: bool,
) -> Result<Report, ModelError> {
    let b = model.build_b()?;
    let cx = b.complex();
    let table = cohomology(cx);
    let top = table.top;
    let harmonic = (0..=top).map(|p| (0..=top).map(|q| harmonic_space(cx, p, q).dim()).collect()).collect();
    let hodge_symmetry = (0..=top).map(|p| (0..=top).map(|q| hodge_symmetry_check(&b, p, q)).collect()).collect();
    let serre_duality = match serre_duality_check(&b) {
        Ok(ok) => ok,
        Err(dolbeault_core::HodgeError::Model(e)) => return Err(e),
        Err(_) => false,
    };
    let star_condition = match model.star_condition_check(star_bound) {
        Ok(v) => Some(v),
        Err(ModelError::StarBoundExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let betti = de_rham(model)?;
    let sums = dolbeault_core::cohomology::compare_sums(&table, &betti);
    let hodge_sum = sums
        .rows
        .iter()
        .map(|r| HodgeSumEntry { k: r.k, hodge_sum: r.hodge_sum, betti: r.betti, equal: r.equal })
        .collect();
    Ok(Report {
        provenance,
        n: model.spec().n,
        m: model.spec().m,
        representatives: with_representatives.then(|| representatives(&table, None)),
        hodge: table.hodge,
        harmonic,
        betti,
        hodge_sum,
        flags: Flags { hodge_symmetry, serre_duality, star_condition, hodge_sum: sums.all_equal },
    })
}

/// A `(p,q)` grid with `p` across and `q` descending, columns right-aligned.
pub fn grid<T: Display>(title: &str, cells: &[Vec<T>]) -> String {
    let top = cells.len();
    let text: Vec<Vec<String>> = cells.iter().map(|r| r.iter().map(T::to_string).collect()).collect();
    let head: Vec<String> = (0..top).map(|p| format!("p={p}")).collect();
    let width = text.iter().flatten().chain(head.iter()).map(|s| s.chars().count()).max().unwrap_or(1);
    let label = (0..top).map(|q| format!("q={q}").len()).chain([title.chars().count()]).max().unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{title:<label$}");
    for h in &head {
        let _ = write!(out, "  {h:>width$}");
    }
    out.push('\n');
    for q in (0..top).rev() {
        let _ = write!(out, "{:<label$}", format!("q={q}"));
        for row in &text {
            let _ = write!(out, "  {:>width$}", row[q]);
        }
        out.push('\n');
    }
    out
}

pub fn representatives_text(reps: &Representatives) -> String {
    let mut out = String::new();
    for (key, forms) in reps {
        let _ = writeln!(out, "H^{{{key}}}:");
        for f in forms {
            let _ = writeln!(out, "  {f}");
        }
    }
    out
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.provenance;
        let _ = writeln!(out, "{} {}  source {}  sha256 {}", p.tool, p.version, p.source, p.manifest_sha256);
        let _ = writeln!(out, "n = {}, m = {}\n", self.n, self.m);
        out += &grid("h^{p,q}", &self.hodge);
        out.push('\n');
        out += &grid("harmonic", &self.harmonic);
        out.push('\n');
        let symmetry: Vec<Vec<&str>> =
            self.flags.hodge_symmetry.iter().map(|r| r.iter().map(|&v| yes_no(v)).collect()).collect();
        out += &grid("symmetric", &symmetry);
        out.push('\n');
        let betti: Vec<String> = self.betti.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "betti: {}", betti.join(" "));
        for r in &self.hodge_sum {
            let _ = writeln!(
                out,
                "k={}: sum h^{{p,q}} = {}, b_k = {}, {}",
                r.k,
                r.hodge_sum,
                r.betti,
                if r.equal { "equal" } else { "differ" }
            );
        }
        let _ = writeln!(out, "serre duality: {}", yes_no(self.flags.serre_duality));
        let star = self.flags.star_condition.map_or("not evaluated", yes_no);
        let _ = writeln!(out, "star condition: {star}");
        let _ = writeln!(out, "hodge sums match betti: {}", yes_no(self.flags.hodge_sum));
        if let Some(reps) = &self.representatives {
            out.push('\n');
            out += &representatives_text(reps);
        }
        out
    }
}
