//! Loading arrangements and candidate bases from files or built-in names.

use std::fs;
use std::path::Path;

use logdiff::arrangement::{builtin, plane_basis, BUILTIN_NAMES};
use logdiff::parse::parse_diffop;
use logdiff::{Arrangement, Derivation, LinearForm, Rational};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

/// `{"dim": l, "forms": [[c, ...], ...], "basis": ["<operator>", ...]}`;
/// coefficients are integers or strings like `"-3/2"`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub dim: usize,
    pub forms: Vec<Vec<Value>>,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum BasisFile {
    Bare(Vec<String>),
    Wrapped { basis: Vec<String> },
}

/// An arrangement plus whatever basis came with it.
pub struct Loaded {
    pub name: String,
    pub arrangement: Arrangement,
    pub basis: Option<Vec<Derivation>>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn coefficient(v: &Value, form: usize) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| usage(format!("form {}: coefficient {n} is not an integer", form + 1))),
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| usage(format!("form {}: cannot read coefficient {s:?}", form + 1))),
        other => Err(usage(format!("form {}: unexpected coefficient {other}", form + 1))),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn parse_derivations(texts: &[String], l: usize) -> Result<Vec<Derivation>, CliError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let op = parse_diffop(t, l).map_err(|e| usage(format!("basis element {}: {e}", i + 1)))?;
            Derivation::from_diffop(&op)
                .ok_or_else(|| usage(format!("basis element {} ({t}) is not a derivation", i + 1)))
        })
        .collect()
}

pub fn arrangement_from_json(text: &str, name: &str) -> Result<Loaded, CliError> {
    let file: ArrangementFile = serde_json::from_str(text).map_err(|e| usage(format!("{name}: {e}")))?;
    let forms = file
        .forms
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != file.dim {
                return Err(usage(format!("form {} has {} coefficients, dim is {}", i + 1, row.len(), file.dim)));
            }
            let coeffs = row.iter().map(|v| coefficient(v, i)).collect::<Result<Vec<_>, _>>()?;
            LinearForm::new(coeffs).map_err(|_| usage(format!("form {} is zero", i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let arrangement = Arrangement::new(forms).map_err(|e| usage(e.to_string()))?;
    let basis = file.basis.map(|b| parse_derivations(&b, file.dim)).transpose()?;
    Ok(Loaded {
        name: name.to_string(),
        arrangement,
        basis,
    })
}

/// `builtin:NAME` or a path to an arrangement file.
pub fn load_arrangement(src: &str) -> Result<Loaded, CliError> {
    if let Some(name) = src.strip_prefix("builtin:") {
        let fx = builtin(name).ok_or_else(|| {
            usage(format!(
                "unknown built-in arrangement {name:?} (available: {}, boolean1..boolean6)",
                BUILTIN_NAMES.join(", ")
            ))
        })?;
        return Ok(Loaded {
            name: fx.name,
            arrangement: fx.arrangement,
            basis: fx.basis,
        });
    }
    let path = Path::new(src);
    arrangement_from_json(&read(path)?, src)
}

pub fn load_basis(path: &Path, l: usize) -> Result<Vec<Derivation>, CliError> {
    let text = read(path)?;
    let file: BasisFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let texts = match file {
        BasisFile::Bare(v) | BasisFile::Wrapped { basis: v } => v,
    };
    parse_derivations(&texts, l)
}

/// Basis from `--basis`, else the one shipped with the arrangement, else
/// the standard basis for a plane arrangement.
pub fn resolve_basis(loaded: &Loaded, basis: Option<&Path>) -> Result<Vec<Derivation>, CliError> {
    if let Some(p) = basis {
        return load_basis(p, loaded.arrangement.dim());
    }
    if let Some(b) = &loaded.basis {
        return Ok(b.clone());
    }
    plane_basis(&loaded.arrangement).ok_or_else(|| {
        usage(format!(
            "{} has no candidate basis; pass one with --basis",
            loaded.name
        ))
    })
}
