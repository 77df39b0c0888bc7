//! Parsing of command-line inputs: inline JSON, JSON files and catalog
//! references.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use singchi_core::catalog::{catalog, CatalogGerm};
use singchi_core::euler::StratumDatum;
use singchi_core::family::Unfolding;
use singchi_core::multiple_points::MapGerm;
use singchi_core::poly::{Rational, Ring};
use singchi_core::standard_basis::IdealPresentation;
use singchi_core::{Error, Result};

/// Inline JSON when the argument looks like JSON, otherwise the contents of
/// the named file. `None` when neither applies.
fn json_source(arg: &str) -> Result<Option<String>> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(arg.to_string()));
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg)
            .map(Some)
            .map_err(|e| Error::BadInput(format!("cannot read {arg}: {e}")));
    }
    Ok(None)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::BadInput(format!("invalid JSON: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GermJson {
    n: Option<usize>,
    vars: Option<Vec<String>>,
    components: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealJson {
    vars: Vec<String>,
    #[serde(alias = "generators")]
    gens: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnfoldingJson {
    n: Option<usize>,
    vars: Vec<String>,
    components: Vec<String>,
    #[serde(default)]
    unfolding: Option<bool>,
    #[serde(default)]
    t: Option<String>,
}

/// Default source variables for a germ from `C^n`: `x, y, z` for n = 3,
/// otherwise `x1, ..., x_{n-1}, z`.
pub fn default_vars(n: usize) -> Vec<String> {
    match n {
        1 => vec!["z".into()],
        2 => vec!["x".into(), "z".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..n)
            .map(|i| format!("x{i}"))
            .chain(["z".to_string()])
            .collect(),
    }
}

/// A germ given as JSON (inline or file) or as a catalog reference.
pub struct GermInput {
    pub germ: MapGerm,
    pub catalog: Option<CatalogGerm>,
    pub echo: Value,
}

pub fn germ_input(arg: &str, params: &BTreeMap<String, Rational>) -> Result<GermInput> {
    if let Some(text) = json_source(arg)? {
        let g: GermJson = parse_json(&text)?;
        let n = g.n.unwrap_or(g.components.len().saturating_sub(1));
        let vars = g.vars.unwrap_or_else(|| default_vars(n));
        if vars.len() != n {
            return Err(Error::BadInput(format!(
                "a germ from C^{n} needs {n} variables, got {}",
                vars.len()
            )));
        }
        let germ = MapGerm::parse(&vars, &g.components)?;
        let echo = serde_json::json!({ "n": n, "vars": vars, "components": g.components });
        return Ok(GermInput {
            germ,
            catalog: None,
            echo,
        });
    }
    let c = catalog(arg, params)?;
    let echo = serde_json::json!({ "catalog": arg, "params": c.params });
    Ok(GermInput {
        germ: c.germ.clone(),
        catalog: Some(c),
        echo,
    })
}

pub fn ideal_input(arg: &str) -> Result<IdealPresentation> {
    let text = json_source(arg)?
        .ok_or_else(|| Error::BadInput(format!("expected ideal JSON or a file, got `{arg}`")))?;
    let i: IdealJson = parse_json(&text)?;
    IdealPresentation::parse(&Ring::new(&i.vars)?, &i.gens)
}

pub fn unfolding_input(arg: &str) -> Result<Unfolding> {
    let text = json_source(arg)?.ok_or_else(|| {
        Error::BadInput(format!("expected unfolding JSON or a file, got `{arg}`"))
    })?;
    let u: UnfoldingJson = parse_json(&text)?;
    if u.unfolding == Some(false) {
        return Err(Error::BadInput(
            "input is marked as not an unfolding".into(),
        ));
    }
    let t = u.t.unwrap_or_else(|| "t".to_string());
    if let Some(n) = u.n {
        if u.vars.len() != n + 1 {
            return Err(Error::BadInput(format!(
                "an unfolding of a germ from C^{n} needs {} variables including {t}",
                n + 1
            )));
        }
    }
    Unfolding::new(&u.vars, &t, &u.components)
}

pub fn strata_input(arg: &str) -> Result<Vec<StratumDatum>> {
    let text = json_source(arg)?
        .ok_or_else(|| Error::BadInput(format!("expected strata JSON or a file, got `{arg}`")))?;
    parse_json(&text)
}

/// Variables of a polynomial string, in order of first appearance, when no
/// explicit list is given.
pub fn infer_vars(text: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let name = &text[i..end];
            if !vars.iter().any(|v| v == name) {
                vars.push(name.to_string());
            }
        } else if c.is_ascii_digit() {
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    chars.next();
                } else {
                    break;
                }
            }
        }
    }
    vars
}

pub fn parse_rationals(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| Error::BadParams(format!("invalid rational `{s}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inferred_variables() {
        assert_eq!(infer_vars("x^2 + y^3*x - 2*z1"), vec!["x", "y", "z1"]);
        assert_eq!(infer_vars("3*w + 12"), vec!["w"]);
    }

    #[test]
    fn germ_from_json_and_catalog() {
        let p = BTreeMap::new();
        let g = germ_input(r#"{"n": 2, "components": ["x", "z^2", "x*z"]}"#, &p).unwrap();
        assert_eq!(g.germ.ring().vars(), &["x", "z"]);
        assert!(g.catalog.is_none());
        let c = germ_input("E_6", &p).unwrap();
        assert_eq!(c.catalog.unwrap().expected_mu_i, 6);
        assert!(germ_input(r#"{"n": 3, "components": ["x"], "bogus": 1}"#, &p).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rationals("0, 1/3,-1").unwrap().len(), 3);
        assert!(parse_rationals("a").is_err());
    }
}
