//! Textual group descriptions.
//!
//! ```text
//! group   := "trivial" | "cyclic:" n | "sym:" n | "dihedral:" n
//!          | "perm:{" cycles ("," cycles)* "}"
//!          | "product:{" group "," group "}"
//!          | "table:{" row (";" row)* "}"
//!          | "twisted_wreath:{" group "," group "," subgroup "," action "}"
//! subgroup := "<" element ("," element)* ">" | "<>" | "all"
//! action   := "trivial" | "inversion"
//! element  := "#" index | label | cycle notation
//! ```
//!
//! Table rows list element indices separated by whitespace; row 0 must be
//! the identity row.

use dirichlet_core::group::{FiniteGroup, GroupError, Subgroup};
use dirichlet_core::perm::Permutation;
use dirichlet_core::permgroup::PermGroup;
use dirichlet_core::wreath::{GroupAction, TwistedWreath};

use crate::error::CliError;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

/// Splits on commas that are not nested inside any bracket.
pub fn split_top_level(s: &str) -> Result<Vec<&str>, CliError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' | '[' | '<' => depth += 1,
            ')' | '}' | ']' | '>' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err(format!("unbalanced `{ch}` in `{s}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced brackets in `{s}`")));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

fn braced<'a>(body: &'a str, kind: &str) -> Result<&'a str, CliError> {
    body.trim()
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| parse_err(format!("{kind}: expected `{{...}}`")))
}

fn parse_count(s: &str, kind: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| parse_err(format!("{kind}: expected a positive integer, got `{s}`")))
}

/// A parsed description: the group, plus the wreath structure when the
/// description was a twisted wreath product.
pub enum Described {
    Plain(FiniteGroup),
    Wreath(Box<TwistedWreath>),
}

impl Described {
    pub fn group(&self) -> &FiniteGroup {
        match self {
            Described::Plain(g) => g,
            Described::Wreath(w) => w.group(),
        }
    }

    pub fn into_group(self) -> FiniteGroup {
        match self {
            Described::Plain(g) => g,
            Described::Wreath(w) => w.group().clone(),
        }
    }
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup, CliError> {
    parse_description(spec).map(Described::into_group)
}

pub fn parse_description(spec: &str) -> Result<Described, CliError> {
    let spec = spec.trim();
    if spec == "trivial" {
        return Ok(Described::Plain(FiniteGroup::trivial()));
    }
    let (kind, body) = spec.split_once(':').ok_or_else(|| parse_err(format!("unknown group `{spec}`")))?;
    let g = match kind.trim() {
        "cyclic" => FiniteGroup::cyclic(parse_count(body, kind)?)?,
        "sym" => {
            let n = parse_count(body, kind)?;
            if n == 0 {
                return Err(parse_err("sym: degree must be positive"));
            }
            FiniteGroup::symmetric(n)?
        }
        "dihedral" => FiniteGroup::dihedral(parse_count(body, kind)?)?,
        "perm" => {
            let parsed = split_top_level(braced(body, kind)?)?
                .into_iter()
                .map(|c| Permutation::parse(c).map_err(|e| parse_err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let degree = parsed.iter().map(Permutation::degree).max().unwrap_or(0).max(1);
            let gens = parsed.iter().map(|p| p.extend_to(degree)).collect();
            let pg = PermGroup::new(degree, gens).map_err(GroupError::from)?;
            FiniteGroup::from_perm_group(&pg)?
        }
        "product" => {
            let parts = split_top_level(braced(body, kind)?)?;
            if parts.len() != 2 {
                return Err(parse_err("product: expected two factors"));
            }
            FiniteGroup::direct_product(&parse_group(parts[0])?, &parse_group(parts[1])?)?
        }
        "table" => {
            let rows = braced(body, kind)?
                .split(';')
                .map(|row| {
                    row.split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("table: bad entry `{t}`"))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_table(&rows, None)?
        }
        "twisted_wreath" => return parse_wreath(braced(body, kind)?).map(|w| Described::Wreath(Box::new(w))),
        other => return Err(parse_err(format!("unknown group kind `{other}`"))),
    };
    Ok(Described::Plain(g))
}

fn parse_wreath(body: &str) -> Result<TwistedWreath, CliError> {
    let parts = split_top_level(body)?;
    let [a, g, g0, action] = parts.as_slice() else {
        return Err(parse_err("twisted_wreath: expected {A,G,G0,action}"));
    };
    let a = parse_group(a)?;
    let g = parse_group(g)?;
    let (gens, acting) = parse_subgroup(&g, g0)?;
    let action = match *action {
        "trivial" => GroupAction::trivial(&g, acting, &a)?,
        "inversion" => {
            if !a.is_abelian() {
                return Err(CliError::Invalid(String::from("inversion needs an abelian A")));
            }
            GroupAction::inversion(&g, &gens, &a)?
        }
        other => return Err(parse_err(format!("unknown action `{other}`"))),
    };
    Ok(TwistedWreath::new(&a, &g, &action)?)
}

/// Generators and the subgroup they generate.
pub fn parse_subgroup(g: &FiniteGroup, spec: &str) -> Result<(Vec<usize>, Subgroup), CliError> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok((g.generators().to_vec(), g.whole()));
    }
    let inner = spec
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| parse_err(format!("subgroup: expected `<...>` or `all`, got `{spec}`")))?;
    let gens = if inner.trim().is_empty() {
        Vec::new()
    } else {
        split_top_level(inner)?.into_iter().map(|e| resolve_element(g, e)).collect::<Result<Vec<_>, _>>()?
    };
    let sub = g.subgroup_generated(&gens);
    Ok((gens, sub))
}

/// `#k` is the k-th element; otherwise the exact label, then the label of
/// the permutation written in cycle notation.
pub fn resolve_element(g: &FiniteGroup, s: &str) -> Result<usize, CliError> {
    let s = s.trim();
    if let Some(idx) = s.strip_prefix('#') {
        let k: usize = idx.parse().map_err(|_| parse_err(format!("bad index `{s}`")))?;
        return if k < g.order() { Ok(k) } else { Err(parse_err(format!("index `{s}` out of range"))) };
    }
    if let Ok(x) = g.find_label(s) {
        return Ok(x);
    }
    if s.starts_with('(') {
        if let Ok(p) = Permutation::parse(s) {
            if let Ok(x) = g.find_label(&p.to_string()) {
                return Ok(x);
            }
        }
    }
    Err(parse_err(format!("unknown element `{s}`")))
}
