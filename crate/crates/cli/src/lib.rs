//! Command line front end: manifests in, Hodge tables and reports out.
//!
//! Exit codes are 0 on success, 2 when the input is rejected (bad arguments,
//! schema errors, failed validation) and 1 on internal or I/O errors.

pub mod literal;
pub mod manifest;
pub mod presets;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dolbeault_core::model::DEFAULT_STAR_BOUND;
use dolbeault_core::{cohomology, de_rham, harmonic_space, lie_dolbeault, Model, ModelError, ModelSpec, Which};
use serde::Serialize;

use crate::manifest::{parse_manifest, SchemaError};
use crate::report::{build_report, grid, representatives, representatives_text, Provenance, Representatives};

#[derive(Parser, Debug)]
#[command(name = "dolbeault", version, about = "Dolbeault cohomology of solvmanifolds C^n ⋉ N / Γ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a manifest against every structural condition
    Validate(Common),
    /// Hodge numbers of the finite subcomplex B
    Cohomology(Common),
    /// Dimensions of the harmonic spaces of B
    Harmonic(Common),
    /// Dolbeault cohomology of left-invariant forms on n, a+n or g
    DolbeaultLie {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "g", value_parser = parse_which)]
        which: Which,
    },
    /// Betti numbers of the Lie algebra g
    DeRham(Common),
    /// Whether every character trivial on the lattice is trivial
    CheckStar(Common),
    /// Everything above in one document
    Report(Common),
    /// List the bundled manifests
    Presets {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Path to a JSON manifest
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub manifest: Option<PathBuf>,
    /// Name of a bundled manifest
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Restrict output to one bidegree, written p,q
    #[arg(long, value_parser = parse_bidegree)]
    pub bidegree: Option<(usize, usize)>,
    /// Include cocycle representatives (basis dependent)
    #[arg(long)]
    pub with_representatives: bool,
    /// Largest m for which the character condition is enumerated
    #[arg(long, default_value_t = DEFAULT_STAR_BOUND)]
    pub max_star_dim: usize,
}

fn parse_which(s: &str) -> Result<Which, String> {
    s.parse()
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q but got '{s}'"))?;
    let p = p.trim().parse().map_err(|_| format!("bad p in '{s}'"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in '{s}'"))?;
    Ok((p, q))
}

#[derive(Serialize)]
struct ErrorItem {
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition: Option<String>,
    message: String,
}

#[derive(Serialize)]
struct ErrorDoc {
    status: &'static str,
    kind: &'static str,
    errors: Vec<ErrorItem>,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    kind: &'static str,
    errors: Vec<ErrorItem>,
}

impl Failure {
    fn plain(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Self { code, kind, errors: vec![ErrorItem { path: None, condition: None, message: message.into() }] }
    }

    fn schema(errors: Vec<SchemaError>) -> Self {
        let errors =
            errors.into_iter().map(|e| ErrorItem { path: Some(e.path), condition: None, message: e.message }).collect();
        Self { code: 2, kind: "schema", errors }
    }

    fn model(e: ModelError) -> Self {
        match e {
            ModelError::Invalid(report) => {
                let errors = report
                    .violations
                    .into_iter()
                    .map(|v| ErrorItem { path: None, condition: Some(v.condition.to_string()), message: v.message })
                    .collect();
                Self { code: 2, kind: "validation", errors }
            }
            e @ ModelError::StarBoundExceeded { .. } => Self::plain(2, "bound", e.to_string()),
            e => Self::plain(1, "internal", e.to_string()),
        }
    }

    fn emit(&self, format: Format, err: &mut dyn Write) {
        match format {
            Format::Json => {
                let doc =
                    ErrorDoc { status: "error", kind: self.kind, errors: self.errors.iter().map(clone_item).collect() };
                let _ = writeln!(err, "{}", serde_json::to_string(&doc).expect("error serializes"));
            }
            Format::Text => {
                for e in &self.errors {
                    let prefix = e.path.as_deref().or(e.condition.as_deref()).unwrap_or(self.kind);
                    let _ = writeln!(err, "error: {prefix}: {}", e.message);
                }
            }
        }
    }
}

fn clone_item(e: &ErrorItem) -> ErrorItem {
    ErrorItem { path: e.path.clone(), condition: e.condition.clone(), message: e.message.clone() }
}

fn load(common: &Common) -> Result<(String, String, ModelSpec), Failure> {
    let (source, text) = match (&common.manifest, &common.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::plain(1, "io", format!("{}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, Some(name)) => {
            let preset = presets::find(name).ok_or_else(|| {
                let names: Vec<&str> = presets::PRESETS.iter().map(|p| p.name).collect();
                Failure::plain(2, "usage", format!("unknown preset '{name}', available: {}", names.join(", ")))
            })?;
            (format!("preset:{name}"), preset.manifest.to_string())
        }
        (None, None) => return Err(Failure::plain(2, "usage", "one of --manifest or --preset is required")),
    };
    let spec = parse_manifest(&text).map_err(Failure::schema)?;
    Ok((source, text, spec))
}

fn load_model(common: &Common) -> Result<(String, String, Model), Failure> {
    let (source, text, spec) = load(common)?;
    let model = Model::new(spec).map_err(Failure::model)?;
    Ok((source, text, model))
}

fn check_bidegree(common: &Common, top: usize) -> Result<(), Failure> {
    match common.bidegree {
        Some((p, q)) if p > top || q > top => {
            Err(Failure::plain(2, "usage", format!("bidegree ({p},{q}) outside 0..={top}")))
        }
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct TableDoc<'a> {
    complex: &'a str,
    quantity: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bidegree: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Representatives>,
}

/// Renders a full table or, under `--bidegree`, one entry.
fn table_output(
    common: &Common,
    complex: &str,
    quantity: &str,
    table: Vec<Vec<usize>>,
    reps: Option<Representatives>,
) -> Result<String, Failure> {
    check_bidegree(common, table.len() - 1)?;
    let doc = match common.bidegree {
        Some((p, q)) => TableDoc {
            complex,
            quantity,
            table: None,
            bidegree: Some((p, q)),
            dimension: Some(table[p][q]),
            representatives: reps,
        },
        None => {
            TableDoc { complex, quantity, table: Some(table), bidegree: None, dimension: None, representatives: reps }
        }
    };
    Ok(match common.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("table serializes") + "\n",
        Format::Text => {
            let mut out = match (&doc.table, doc.bidegree) {
                (Some(t), _) => grid(&format!("{quantity}({complex})"), t),
                (None, Some((p, q))) => format!("{quantity}^{{{p},{q}}}({complex}) = {}\n", doc.dimension.unwrap_or(0)),
                _ => String::new(),
            };
            if let Some(r) = &doc.representatives {
                out.push('\n');
                out += &representatives_text(r);
            }
            out
        }
    })
}

fn execute(command: &Command) -> Result<(String, Format), Failure> {
    match command {
        Command::Presets { format } => {
            #[derive(Serialize)]
            struct Entry<'a> {
                name: &'a str,
                description: &'a str,
            }
            let entries: Vec<Entry> =
                presets::PRESETS.iter().map(|p| Entry { name: p.name, description: p.description }).collect();
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&entries).expect("presets serialize") + "\n",
                Format::Text => entries.iter().map(|e| format!("{:<18} {}\n", e.name, e.description)).collect(),
            };
            Ok((out, *format))
        }
        Command::Validate(c) => {
            let (_, _, spec) = load(c)?;
            let report = spec.validate();
            if !report.is_valid() {
                return Err(Failure::model(ModelError::Invalid(report)));
            }
            let out = match c.format {
                Format::Json => "{\"status\":\"valid\",\"violations\":[]}\n".to_string(),
                Format::Text => "valid\n".to_string(),
            };
            Ok((out, c.format))
        }
        Command::Cohomology(c) => {
            let (_, _, model) = load_model(c)?;
            let b = model.build_b().map_err(Failure::model)?;
            let table = cohomology(b.complex());
            let reps = c.with_representatives.then(|| representatives(&table, c.bidegree));
            Ok((table_output(c, "B", "h", table.hodge, reps)?, c.format))
        }
        Command::Harmonic(c) => {
            let (_, _, model) = load_model(c)?;
            let b = model.build_b().map_err(Failure::model)?;
            let cx = b.complex();
            let top = cx.top();
            check_bidegree(c, top)?;
            let mut dims = vec![vec![0; top + 1]; top + 1];
            let mut reps = Representatives::new();
            for p in 0..=top {
                for q in 0..=top {
                    if c.bidegree.is_some_and(|bq| bq != (p, q)) {
                        continue;
                    }
                    let space = harmonic_space(cx, p, q);
                    dims[p][q] = space.dim();
                    if c.with_representatives {
                        reps.insert(format!("{p},{q}"), space.basis.iter().map(ToString::to_string).collect());
                    }
                }
            }
            let reps = c.with_representatives.then_some(reps);
            Ok((table_output(c, "B", "harmonic", dims, reps)?, c.format))
        }
        Command::DolbeaultLie { common: c, which } => {
            let (_, _, model) = load_model(c)?;
            let table = lie_dolbeault(&model, *which).map_err(Failure::model)?;
            let reps = c.with_representatives.then(|| representatives(&table, c.bidegree));
            Ok((table_output(c, &which.to_string(), "h", table.hodge, reps)?, c.format))
        }
        Command::DeRham(c) => {
            let (_, _, model) = load_model(c)?;
            let betti = de_rham(&model).map_err(Failure::model)?;
            let out = match c.format {
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({ "betti": betti })).expect("betti") + "\n"
                }
                Format::Text => {
                    let parts: Vec<String> = betti.iter().enumerate().map(|(k, b)| format!("b_{k} = {b}")).collect();
                    parts.join("\n") + "\n"
                }
            };
            Ok((out, c.format))
        }
        Command::CheckStar(c) => {
            let (_, _, model) = load_model(c)?;
            let ok = model.star_condition_check(c.max_star_dim).map_err(Failure::model)?;
            let out = match c.format {
                Format::Json => format!("{{\"star_condition\":{ok}}}\n"),
                Format::Text => format!("star condition: {}\n", if ok { "holds" } else { "fails" }),
            };
            Ok((out, c.format))
        }
        Command::Report(c) => {
            let (source, text, model) = load_model(c)?;
            let mut report =
                build_report(&model, Provenance::new(&source, &text), c.max_star_dim, c.with_representatives)
                    .map_err(Failure::model)?;
            if let Some(bq) = c.bidegree {
                check_bidegree(c, report.hodge.len() - 1)?;
                if let Some(reps) = report.representatives.as_mut() {
                    reps.retain(|k, _| *k == format!("{},{}", bq.0, bq.1));
                }
            }
            let out = match c.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            Ok((out, c.format))
        }
    }
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Presets { format } => *format,
        Command::DolbeaultLie { common, .. } => common.format,
        Command::Validate(c)
        | Command::Cohomology(c)
        | Command::Harmonic(c)
        | Command::DeRham(c)
        | Command::CheckStar(c)
        | Command::Report(c) => c.format,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, _)) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                1
            }
        },
        Err(failure) => {
            failure.emit(format_of(&cli.command), err);
            failure.code
        }
    }
}
