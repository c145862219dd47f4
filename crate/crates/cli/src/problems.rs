//! Embedding-problem files (TOML).
//!
//! ```toml
//! gamma = "cyclic:4"
//! a = "cyclic:2"
//! g = "product:{cyclic:2,cyclic:2}"
//! mu = { images = ["1"] }                      # images of gamma's generators
//! alpha = { gens = ["(1,0)", "(0,1)"], images = ["1", "0"] }
//! distinguished = "<(1,0)>"                    # optional G0 <= G
//! ```
//!
//! A double embedding problem has `[lower]` and `[higher]` tables of the
//! form above plus the inclusions `gamma_in_lambda`, `g_in_h`, `a_in_b`.

use dirichlet_core::embedding::{DoubleEmbeddingProblem, EmbeddingProblem};
use dirichlet_core::group::{FiniteGroup, Hom};
use serde::Deserialize;

use crate::error::CliError;
use crate::groups::{parse_group, parse_subgroup, resolve_element};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    /// Defaults to the stored generators of the source group.
    #[serde(default)]
    pub gens: Option<Vec<String>>,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub gamma: String,
    pub a: String,
    pub g: String,
    pub mu: MapSpec,
    pub alpha: MapSpec,
    #[serde(default)]
    pub distinguished: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepSpec {
    pub lower: ProblemSpec,
    pub higher: ProblemSpec,
    pub gamma_in_lambda: MapSpec,
    pub g_in_h: MapSpec,
    pub a_in_b: MapSpec,
}

pub enum Problem {
    Single(EmbeddingProblem),
    Double(Box<DoubleEmbeddingProblem>),
}

pub fn build_map(source: &FiniteGroup, target: &FiniteGroup, spec: &MapSpec, name: &str) -> Result<Hom, CliError> {
    let gens = match &spec.gens {
        Some(g) => g.iter().map(|s| resolve_element(source, s)).collect::<Result<Vec<_>, _>>()?,
        None => source.generators().to_vec(),
    };
    if gens.len() != spec.images.len() {
        return Err(CliError::Parse(format!("{name}: {} generators but {} images", gens.len(), spec.images.len())));
    }
    let images = spec.images.iter().map(|s| resolve_element(target, s)).collect::<Result<Vec<_>, _>>()?;
    Hom::from_generators(source, target, &gens, &images)
        .ok_or_else(|| CliError::Invalid(format!("{name}: images do not define a homomorphism")))
}

impl ProblemSpec {
    pub fn build(&self) -> Result<EmbeddingProblem, CliError> {
        let gamma = parse_group(&self.gamma)?;
        let a = parse_group(&self.a)?;
        let g = parse_group(&self.g)?;
        let mu = build_map(&gamma, &a, &self.mu, "mu")?;
        let alpha = build_map(&g, &a, &self.alpha, "alpha")?;
        let distinguished = match &self.distinguished {
            Some(s) => Some(parse_subgroup(&g, s)?.1),
            None => None,
        };
        let p = EmbeddingProblem::new(gamma, mu, a, g, alpha)?;
        Ok(match distinguished {
            Some(g0) => p.with_distinguished(g0)?,
            None => p,
        })
    }
}

impl DepSpec {
    pub fn build(&self) -> Result<DoubleEmbeddingProblem, CliError> {
        let lower = self.lower.build()?;
        let higher = self.higher.build()?;
        let gl = build_map(&lower.gamma, &higher.gamma, &self.gamma_in_lambda, "gamma_in_lambda")?;
        let gh = build_map(&lower.g, &higher.g, &self.g_in_h, "g_in_h")?;
        let ab = build_map(&lower.a, &higher.a, &self.a_in_b, "a_in_b")?;
        Ok(DoubleEmbeddingProblem::new(lower, higher, gl, gh, ab)?)
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let value: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
    if value.contains_key("lower") {
        let spec: DepSpec = value.try_into().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
        Ok(Problem::Double(Box::new(spec.build()?)))
    } else {
        let spec: ProblemSpec = value.try_into().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
        Ok(Problem::Single(spec.build()?))
    }
}

/// Named problems shipped with the binary.
pub const CATALOG: &[(&str, &str)] = &[
    (
        "z4-z2",
        r#"
gamma = "cyclic:4"
a = "cyclic:2"
g = "product:{cyclic:2,cyclic:2}"
mu = { images = ["1"] }
alpha = { gens = ["(1,0)", "(0,1)"], images = ["1", "0"] }
"#,
    ),
    (
        "iso",
        r#"
gamma = "cyclic:3"
a = "cyclic:3"
g = "cyclic:3"
mu = { images = ["1"] }
alpha = { images = ["1"] }
"#,
    ),
    (
        "z2-z4",
        r#"
gamma = "cyclic:2"
a = "cyclic:2"
g = "cyclic:4"
mu = { images = ["1"] }
alpha = { images = ["1"] }
"#,
    ),
    (
        "s3-sign",
        r#"
gamma = "sym:3"
a = "cyclic:2"
g = "sym:3"
mu = { gens = ["(1 2 3)", "(1 2)"], images = ["0", "1"] }
alpha = { gens = ["(1 2 3)", "(1 2)"], images = ["0", "1"] }
distinguished = "<(1 2)>"
"#,
    ),
    (
        "dep-klein",
        r#"
gamma_in_lambda = { gens = ["1"], images = ["(1,0)"] }
g_in_h = { gens = ["1"], images = ["(1,0)"] }
a_in_b = { gens = ["1"], images = ["1"] }

[lower]
gamma = "cyclic:2"
a = "cyclic:2"
g = "cyclic:2"
mu = { images = ["1"] }
alpha = { images = ["1"] }

[higher]
gamma = "product:{cyclic:2,cyclic:2}"
a = "cyclic:2"
g = "product:{cyclic:2,cyclic:2}"
mu = { gens = ["(1,0)", "(0,1)"], images = ["1", "0"] }
alpha = { gens = ["(1,0)", "(0,1)"], images = ["1", "0"] }
"#,
    ),
];

pub fn catalog_problem(name: &str) -> Result<Problem, CliError> {
    let (_, text) = CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::Parse(format!("no catalog problem `{name}`")))?;
    parse_problem(text)
}
