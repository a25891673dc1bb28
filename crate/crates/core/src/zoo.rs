//! Built-in manifolds and the manifest format for user potentials.
//!
//! A manifest is a list of `key = value` lines; `#` starts a comment.
//!
//! ```text
//! name = fs_cp2
//! n = 2
//! potential = log(1 + rsq)
//! domain = [-1.5, 1.5]          # one interval for every coordinate
//! expected_class = einstein     # optional
//! ```
//!
//! `domain` is either one interval, applied to all `2n` real coordinates,
//! or `2n` intervals in the order `x1..xn, y1..yn`. See `docs/manifest.md`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::classifier::LadderClass;
use crate::potential::{parse, Expr, ParseError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("manifest line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("manifest is missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("potential: {0}")]
    Potential(ParseError),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown zoo manifold `{0}` (try `zoo list`)")]
    UnknownZoo(String),
}

/// A manifold given by a potential on a coordinate box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifoldSpec {
    pub name: String,
    pub n: usize,
    pub potential: String,
    /// one `[lo, hi]` per real coordinate, `x1..xn, y1..yn`
    pub domain: Vec<[f64; 2]>,
    pub expected_class: Option<LadderClass>,
    #[serde(skip)]
    pub expr: Expr,
}

impl ManifoldSpec {
    /// Validate and build a spec; `domain` may have one interval (broadcast)
    /// or `2n`.
    pub fn new(
        name: &str,
        n: usize,
        potential: &str,
        domain: &[[f64; 2]],
        expected_class: Option<LadderClass>,
    ) -> Result<ManifoldSpec, SpecError> {
        if n == 0 {
            return Err(SpecError::Dimension("n must be at least 1".into()));
        }
        let expr = parse(potential, n).map_err(|e| match e {
            ParseError::CoordinateOutOfRange { .. } => SpecError::Dimension(e.to_string()),
            other => SpecError::Potential(other),
        })?;
        let domain: Vec<[f64; 2]> = match domain.len() {
            1 => vec![domain[0]; 2 * n],
            len if len == 2 * n => domain.to_vec(),
            len => {
                return Err(SpecError::Dimension(format!(
                    "domain has {len} intervals, expected 1 or {}",
                    2 * n
                )))
            }
        };
        for (i, [lo, hi]) in domain.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(SpecError::Domain(format!("interval {} is not finite", i + 1)));
            }
            if !(hi - lo > 2.0 * SAMPLING_MARGIN) {
                return Err(SpecError::Domain(format!(
                    "interval {} = [{lo}, {hi}] is empty after the {SAMPLING_MARGIN} boundary margin",
                    i + 1
                )));
            }
        }
        Ok(ManifoldSpec {
            name: name.to_string(),
            n,
            potential: potential.to_string(),
            domain,
            expected_class,
            expr,
        })
    }
}

/// Sample points stay this far inside the domain box.
pub const SAMPLING_MARGIN: f64 = 1e-3;

/// Default coefficient of the quartic term of `perturbed_flat`.
pub const PERTURBATION: f64 = 0.1;

/// `absq(1) + absq(2) + eps·absq(1)·absq(2)`.
pub fn perturbed_flat(eps: f64) -> ManifoldSpec {
    ManifoldSpec::new(
        "perturbed_flat",
        2,
        &format!("absq(1) + absq(2) + {eps:?} * absq(1) * absq(2)"),
        &[[-1.0, 1.0]],
        None,
    )
    .expect("valid built-in spec")
}

/// The built-in fixtures, chosen to separate the rungs of the ladder.
pub fn zoo() -> Vec<ManifoldSpec> {
    let spec = |name: &str, n, k: &str, box_: f64, class| {
        ManifoldSpec::new(name, n, k, &[[-box_, box_]], class).expect("valid built-in spec")
    };
    vec![
        spec("flat_c2", 2, "absq(1) + absq(2)", 1.0, Some(LadderClass::RicciFlat)),
        spec("fs_cp1", 1, "log(1 + absq(1))", 2.0, Some(LadderClass::Einstein)),
        spec("fs_cp2", 2, "log(1 + rsq)", 1.5, Some(LadderClass::Einstein)),
        // corners of the box lie inside the unit ball: 4 · 0.45² < 1
        spec("hyperbolic_ball_2", 2, "-log(1 - rsq)", 0.45, Some(LadderClass::Einstein)),
        spec(
            "product_cp1_cp1_unequal",
            2,
            "log(1 + absq(1)) + 2 * log(1 + absq(2))",
            1.5,
            Some(LadderClass::RicciParallel),
        ),
        perturbed_flat(PERTURBATION),
    ]
}

pub fn zoo_entry(name: &str) -> Option<ManifoldSpec> {
    zoo().into_iter().find(|s| s.name == name)
}

fn parse_interval(text: &str) -> Option<[f64; 2]> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    Some([a.trim().parse().ok()?, b.trim().parse().ok()?])
}

fn parse_domain(value: &str, line: usize) -> Result<Vec<[f64; 2]>, SpecError> {
    let mut out = Vec::new();
    let mut rest = value.trim();
    while !rest.is_empty() {
        let end = rest.find(']').ok_or_else(|| SpecError::Syntax {
            line,
            message: "domain interval is missing `]`".into(),
        })?;
        let interval = parse_interval(&rest[..=end]).ok_or_else(|| SpecError::Syntax {
            line,
            message: format!("expected an interval `[lo, hi]`, found `{}`", &rest[..=end]),
        })?;
        out.push(interval);
        rest = rest[end + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    if out.is_empty() {
        return Err(SpecError::Syntax {
            line,
            message: "domain has no intervals".into(),
        });
    }
    Ok(out)
}

/// Parse manifest text.
pub fn parse_manifest(text: &str) -> Result<ManifoldSpec, SpecError> {
    const KEYS: [&str; 5] = ["name", "n", "potential", "domain", "expected_class"];
    let mut values: BTreeMap<&str, (usize, String)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| SpecError::Syntax {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let key = key.trim();
        let known = KEYS.iter().find(|k| **k == key).ok_or_else(|| SpecError::Syntax {
            line,
            message: format!("unknown key `{key}` (expected one of {})", KEYS.join(", ")),
        })?;
        if values.insert(known, (line, value.trim().to_string())).is_some() {
            return Err(SpecError::Syntax {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    let get = |key: &'static str| values.get(key).ok_or(SpecError::MissingKey(key));
    let name = &get("name")?.1;
    let (n_line, n_text) = get("n")?;
    let n: usize = n_text.parse().map_err(|_| SpecError::Syntax {
        line: *n_line,
        message: format!("n must be a positive integer, found `{n_text}`"),
    })?;
    let (d_line, d_text) = get("domain")?;
    let domain = parse_domain(d_text, *d_line)?;
    let expected_class = match values.get("expected_class") {
        None => None,
        Some((line, text)) => Some(LadderClass::parse(text).ok_or_else(|| SpecError::Syntax {
            line: *line,
            message: format!(
                "unknown class `{text}` (expected one of {})",
                LadderClass::ALL.map(|c| c.name()).join(", ")
            ),
        })?),
    };
    ManifoldSpec::new(name, n, &get("potential")?.1, &domain, expected_class)
}

/// Read and validate a manifest file.
pub fn load_spec(path: &Path) -> Result<ManifoldSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_manifest(&text)
}

/// A zoo name, or else a manifest path.
pub fn resolve(target: &str) -> Result<ManifoldSpec, SpecError> {
    if let Some(spec) = zoo_entry(target) {
        return Ok(spec);
    }
    let path = Path::new(target);
    if path.exists() {
        return load_spec(path);
    }
    Err(SpecError::UnknownZoo(target.to_string()))
}

/// Manifest text that loads back to `spec`.
pub fn to_manifest(spec: &ManifoldSpec) -> String {
    let domain: Vec<String> = spec.domain.iter().map(|[a, b]| format!("[{a:?}, {b:?}]")).collect();
    let mut text = format!(
        "name = {}\nn = {}\npotential = {}\ndomain = {}\n",
        spec.name,
        spec.n,
        spec.potential,
        domain.join(" ")
    );
    if let Some(c) = spec.expected_class {
        text.push_str(&format!("expected_class = {}\n", c.name()));
    }
    text
}
