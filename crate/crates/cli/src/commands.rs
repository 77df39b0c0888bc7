//! Command implementations. Each returns an [`Outcome`] whose `result` is
//! the JSON payload of the report.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use singchi_core::catalog::{parse_params, resolve, CatalogEntry, CatalogGerm, CATALOG};
use singchi_core::euler::{
    equidim_example, image_chi, stratified_euler_difference, zariski_chi, ImageChiReport,
};
use singchi_core::family::{default_t_values, family_check};
use singchi_core::milnor::{hypersurface_milnor, icis_milnor};
use singchi_core::multiple_points::{
    beta_k, invariant_tuple, space_milnor, Partition, TupleComputation,
};
use singchi_core::poly::{parse_poly, rat, Rational, Ring};
use singchi_core::standard_basis::Engine;
use singchi_core::{Error, Result};

use crate::input::{
    germ_input, ideal_input, infer_vars, parse_rationals, strata_input, unfolding_input,
};
use crate::{Command, GlobalOpts, Outcome};

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

pub fn run(cmd: &Command, engine: &Engine, opts: &GlobalOpts) -> Result<Outcome> {
    let seed = opts.seed;
    match cmd {
        Command::Milnor { poly, vars } => milnor(engine, poly, vars.as_deref()),
        Command::Icis { ideal } => {
            let ideal = ideal_input(ideal)?;
            let res = icis_milnor(engine, &ideal, seed)?;
            Ok(Outcome {
                inputs: json!({ "vars": ideal.ring().vars(), "gens": ideal.gen_strings() }),
                summary: vec![format!("mu = {}", res.mu)],
                result: to_value(&res),
                ok: true,
            })
        }
        Command::Mps {
            germ,
            k,
            partition,
            params,
        } => mps(engine, germ, *k, partition.as_deref(), params, seed),
        Command::ImageChi { germ, params } => image_chi_cmd(engine, germ, params, seed),
        Command::Table1 { rows, params } => table1(engine, rows, params, seed),
        Command::Zariski {
            mu_g,
            mu_f,
            n,
            mu_i_f,
        } => {
            let z = zariski_chi(*mu_g, *mu_f, *n, *mu_i_f)?;
            Ok(Outcome {
                inputs: json!({ "mu_g": mu_g, "mu_f": mu_f, "n": n, "mu_I_f": mu_i_f }),
                summary: vec![
                    format!("chi(MF_f) = {}", z.chi_mf_f),
                    format!("chi(F_a^-1(0)) = {}", z.chi_special_fibre),
                    format!("chi(MF_F) = {}", z.chi_mf_composite),
                ],
                result: to_value(&z),
                ok: true,
            })
        }
        Command::Equidim { phi, n, vars } => equidim(engine, phi, *n, vars.as_deref()),
        Command::Family { unfolding, t } => {
            let family = unfolding_input(unfolding)?;
            let ts = match t {
                Some(t) => parse_rationals(t)?,
                None => default_t_values(),
            };
            let verdict = family_check(engine, &family, &ts, seed)?;
            let mut summary = vec![format!("constant = {}", verdict.constant)];
            for v in &verdict.certificate {
                let vals: Vec<String> = v
                    .values
                    .iter()
                    .map(|(t, x)| format!("t={t}: {x}"))
                    .collect();
                summary.push(format!("{} varies ({})", v.field, vals.join(", ")));
            }
            for t in &verdict.failed_samples {
                summary.push(format!("sample t={t} failed"));
            }
            Ok(Outcome {
                inputs: json!({
                    "unfolding": unfolding,
                    "t": ts.iter().map(Rational::to_string).collect::<Vec<_>>(),
                }),
                summary,
                result: to_value(&verdict),
                ok: true,
            })
        }
        Command::StratEuler { strata } => {
            let data = strata_input(strata)?;
            let diff = stratified_euler_difference(&data);
            Ok(Outcome {
                inputs: json!({ "strata": data }),
                summary: vec![diff.to_string()],
                result: json!({ "chi_difference": diff }),
                ok: true,
            })
        }
    }
}

fn milnor(engine: &Engine, poly: &str, vars: Option<&str>) -> Result<Outcome> {
    let vars = match vars {
        Some(v) => split_list(v),
        None => infer_vars(poly),
    };
    if vars.is_empty() {
        return Err(Error::BadInput("no variables given or found".into()));
    }
    let ring = Ring::new(&vars)?;
    let g = parse_poly(poly, &ring)?;
    let res = hypersurface_milnor(engine, &g)?;
    Ok(Outcome {
        inputs: json!({ "poly": g.to_string(), "vars": vars }),
        summary: vec![format!("mu = {}", res.mu)],
        result: to_value(&res),
        ok: true,
    })
}

fn mps(
    engine: &Engine,
    germ: &str,
    k: Option<usize>,
    partition: Option<&str>,
    params: &[String],
    seed: u64,
) -> Result<Outcome> {
    let g = germ_input(germ, &parse_params(params)?)?;
    let partition = partition.map(Partition::parse).transpose()?;
    let k = match (k, &partition) {
        (Some(k), Some(p)) if p.total() != k => {
            return Err(Error::BadParams(format!(
                "partition {p} is not a partition of {k}"
            )))
        }
        (Some(k), _) => Some(k),
        (None, Some(p)) => Some(p.total()),
        (None, None) => None,
    };
    let result = match k {
        Some(k) => {
            if k < 2 {
                return Err(Error::BadParams(format!("need k >= 2, got {k}")));
            }
            let p = partition.unwrap_or_else(|| Partition::trivial(k));
            let space = space_milnor(engine, &g.germ, k, &p, seed)?;
            let beta = beta_k(engine, &g.germ, k)?;
            json!({ "beta": beta, "spaces": [space] })
        }
        None => {
            let tc = invariant_tuple(engine, &g.germ, seed)?;
            to_value(&tc)
        }
    };
    let mut summary = Vec::new();
    if let Some(b) = result.get("beta") {
        summary.push(format!("beta_{} = {b}", k.unwrap_or(0)));
    }
    if let Some(spaces) = result.get("spaces").and_then(Value::as_array) {
        for s in spaces {
            summary.push(format!(
                "mu({}) = {}{}",
                s["name"].as_str().unwrap_or("?"),
                s["milnor"]["mu"],
                if s["empty"].as_bool() == Some(true) {
                    " (empty)"
                } else {
                    ""
                }
            ));
        }
    }
    if let Some(t) = result.get("tuple") {
        summary.push(format!("tuple = {t}"));
    }
    Ok(Outcome {
        inputs: g.echo,
        result,
        summary,
        ok: true,
    })
}

fn chi_summary(report: &ImageChiReport) -> Vec<String> {
    vec![
        format!("mu_I = {}", report.mu_i),
        format!("chi(Dis) = {}", report.chi_dis),
        format!("chi(MF) = {}", report.chi_mf),
        format!("consistency = {}", report.consistency),
    ]
}

fn parity_ok(tc: &TupleComputation) -> bool {
    tc.tuple.mu_d3 % 2 == tc.tuple.mu_d3_h1 % 2
}

fn expected_value(c: &CatalogGerm, report: &ImageChiReport) -> Value {
    json!({
        "mu_i": c.expected_mu_i,
        "neg_chi_mf": c.expected_neg_chi,
        "match": c.expected_mu_i == report.mu_i && c.expected_neg_chi == -report.chi_mf,
    })
}

fn image_chi_cmd(engine: &Engine, germ: &str, params: &[String], seed: u64) -> Result<Outcome> {
    let g = germ_input(germ, &parse_params(params)?)?;
    let tc = invariant_tuple(engine, &g.germ, seed)?;
    let report = image_chi(&tc.tuple)?;
    let mut result = to_value(&report);
    result["parity_ok"] = json!(parity_ok(&tc));
    result["d4_points"] = json!(tc.d4_points);
    result["spaces"] = to_value(&tc.spaces);
    let mut summary = chi_summary(&report);
    if let Some(c) = &g.catalog {
        let expected = expected_value(c, &report);
        summary.push(format!(
            "{}: expected mu_I = {}, -chi(MF) = {}, match = {}",
            c.name, c.expected_mu_i, c.expected_neg_chi, expected["match"]
        ));
        result["expected"] = expected;
        if let Some(note) = c.note {
            result["note"] = json!(note);
        }
    }
    Ok(Outcome {
        inputs: g.echo,
        result,
        summary,
        ok: true,
    })
}

/// Splits a row list on commas outside braces, so `S_{1,2}` stays whole.
fn split_rows(items: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for item in items {
        let mut depth = 0i32;
        let mut cur = String::new();
        for c in item.chars() {
            match c {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            if c == ',' && depth == 0 {
                out.push(std::mem::take(&mut cur));
            } else {
                cur.push(c);
            }
        }
        out.push(cur);
    }
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Smallest admissible values for the integer parameters that are not
/// already fixed.
fn minimal_params(entry: &CatalogEntry, fixed: &BTreeMap<String, Rational>) -> Result<CatalogGerm> {
    let missing: Vec<&str> = entry
        .params
        .iter()
        .copied()
        .filter(|p| !fixed.contains_key(*p))
        .collect();
    let mut candidates: Vec<BTreeMap<String, Rational>> = vec![fixed.clone()];
    for name in &missing {
        candidates = candidates
            .into_iter()
            .flat_map(|base| {
                (0..=12).map(move |v| {
                    let mut m = base.clone();
                    m.insert(name.to_string(), rat(v));
                    m
                })
            })
            .collect();
    }
    let mut last = None;
    for c in &candidates {
        match entry.instantiate(c) {
            Ok(g) => return Ok(g),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| {
        Error::BadParams(format!("no admissible parameters for {}", entry.name))
    }))
}

fn table_germ(reference: &str, user: &BTreeMap<String, Rational>) -> Result<CatalogGerm> {
    let (entry, mut params) = resolve(reference)?;
    for (k, v) in user {
        let relevant = entry.params.contains(&k.as_str()) || entry.moduli.contains(&k.as_str());
        if relevant && !params.contains_key(k) {
            params.insert(k.clone(), v.clone());
        }
    }
    minimal_params(entry, &params)
}

fn table_row(
    engine: &Engine,
    reference: &str,
    user: &BTreeMap<String, Rational>,
    seed: u64,
) -> Value {
    let germ = match table_germ(reference, user) {
        Ok(g) => g,
        Err(e) => return json!({ "row": reference, "error": e.to_string(), "match": false }),
    };
    let computed =
        invariant_tuple(engine, &germ.germ, seed).and_then(|tc| Ok((image_chi(&tc.tuple)?, tc)));
    let mut row = json!({
        "row": reference,
        "name": germ.name,
        "params": germ.params,
        "components": germ.components,
    });
    match computed {
        Ok((report, tc)) => {
            let expected = expected_value(&germ, &report);
            let matched = expected["match"].as_bool() == Some(true);
            row["tuple"] = to_value(&tc.tuple);
            row["mu_i"] = json!(report.mu_i);
            row["neg_chi_mf"] = json!(-report.chi_mf);
            row["expected"] = expected;
            row["parity_ok"] = json!(parity_ok(&tc));
            row["consistency"] = json!(report.consistency);
            row["match"] = json!(matched && parity_ok(&tc) && report.consistency);
        }
        Err(e) => {
            row["error"] = json!(e.to_string());
            row["match"] = json!(false);
        }
    }
    if let Some(note) = germ.note {
        row["note"] = json!(note);
    }
    row
}

fn table1(engine: &Engine, rows: &[String], params: &[String], seed: u64) -> Result<Outcome> {
    let user = parse_params(params)?;
    let mut refs = split_rows(rows);
    if refs.is_empty() {
        refs = CATALOG.iter().map(|e| e.name.to_string()).collect();
    }
    for r in &refs {
        resolve(r)?;
    }
    let results: Vec<Value> = refs
        .par_iter()
        .map(|r| table_row(engine, r, &user, seed))
        .collect();
    let mismatches: Vec<String> = results
        .iter()
        .filter(|r| r["match"].as_bool() != Some(true))
        .map(|r| {
            r["name"]
                .as_str()
                .or(r["row"].as_str())
                .unwrap_or("?")
                .to_string()
        })
        .collect();
    let mut summary: Vec<String> = results
        .iter()
        .map(|r| {
            let name = r["name"].as_str().or(r["row"].as_str()).unwrap_or("?");
            if let Some(err) = r.get("error") {
                return format!("{name:<10} error: {}", err.as_str().unwrap_or(""));
            }
            format!(
                "{name:<10} mu_I {:>3} (table {:>3})  -chi {:>3} (table {:>3})  {}",
                r["mu_i"],
                r["expected"]["mu_i"],
                r["neg_chi_mf"],
                r["expected"]["neg_chi_mf"],
                if r["match"].as_bool() == Some(true) {
                    "ok"
                } else {
                    "MISMATCH"
                }
            )
        })
        .collect();
    summary.push(format!(
        "{} rows, {} mismatches",
        results.len(),
        mismatches.len()
    ));
    Ok(Outcome {
        inputs: json!({
            "rows": refs,
            "params": user.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
        }),
        result: json!({ "rows": results, "mismatches": mismatches }),
        ok: mismatches.is_empty(),
        summary,
    })
}

fn equidim(engine: &Engine, phi: &str, n: usize, vars: Option<&str>) -> Result<Outcome> {
    if n < 2 {
        return Err(Error::BadParams(format!("need n >= 2, got {n}")));
    }
    let mut vars = match vars {
        Some(v) => split_list(v),
        None => infer_vars(phi),
    };
    for fallback in ["x", "y", "v", "w", "s"] {
        if vars.len() >= n - 1 {
            break;
        }
        if !vars.iter().any(|v| v == fallback) {
            vars.push(fallback.to_string());
        }
    }
    if vars.len() != n - 1 {
        return Err(Error::BadInput(format!(
            "phi must be a polynomial in n-1 = {} variables, got {}",
            n - 1,
            vars.len()
        )));
    }
    let ring = Ring::new(&vars)?;
    let p = parse_poly(phi, &ring)?;
    let report = equidim_example(engine, &p, n)?;
    Ok(Outcome {
        inputs: json!({ "phi": p.to_string(), "n": n, "vars": vars }),
        summary: vec![
            format!("mu(phi) = {}", report.mu_phi),
            format!("chi(MF) formula = {}", report.chi_mf_formula),
            format!("chi(MF) stratified = {}", report.chi_mf_stratified),
            format!(
                "discriminant = {} (ratio {})",
                report.discriminant, report.discriminant_ratio
            ),
        ],
        ok: true,
        result: to_value(&report),
    })
}
