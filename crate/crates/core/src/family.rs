//! One-parameter unfoldings and numerical constancy of their invariants.
//!
//! The checker specializes the parameter at finitely many rational values
//! and compares the invariant tuples of the resulting germs at the origin.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{chi_mf_image, image_milnor_number};
use crate::multiple_points::{invariant_tuple, InvariantTuple, MapGerm};
use crate::poly::{parse_poly, rat, rat_frac, Polynomial, Rational, Ring, VarAssignment};
use crate::standard_basis::Engine;

/// Parameter values used when none are given.
pub fn default_t_values() -> Vec<Rational> {
    vec![rat(0), rat_frac(1, 3), rat(-1), rat_frac(7, 5)]
}

/// Caveats attached to every verdict.
pub const CAVEATS: [&str; 3] = [
    "constancy is checked at the sampled parameter values only; it certifies the computable \
     part of the hypotheses (image Milnor number and multiple point Milnor numbers), not a \
     parametric computation",
    "all invariants are computed for the germ at the origin; instabilities of f_t away from \
     the origin are not detected",
    "the geometric conditions on the unfolding (good or excellent unfolding, constancy of \
     0-stable types) are assumed, not verified",
];

pub const SCOPE: &str = "numerical hypotheses (computable part)";

/// `F(x, z, t) = (f_t(x, z), t)` with `f_t(0) = 0` for all `t`.
#[derive(Clone, Debug)]
pub struct Unfolding {
    ring: Ring,
    germ_ring: Ring,
    t: String,
    components: Vec<Polynomial>,
}

impl Unfolding {
    /// `vars` lists the source variables of the germ (kernel variable last)
    /// together with the parameter `t`, in any position.
    pub fn new<S: AsRef<str>>(vars: &[S], t: &str, components: &[S]) -> Result<Unfolding> {
        let ring = Ring::new(vars)?;
        if !ring.contains(t) {
            return Err(Error::UnknownVariable(t.to_string()));
        }
        let germ_ring = ring.without(&[t]);
        if germ_ring.is_empty() {
            return Err(Error::BadInput("unfolding has no source variables".into()));
        }
        let components = components
            .iter()
            .map(|c| parse_poly(c.as_ref(), &ring))
            .collect::<Result<Vec<_>>>()?;
        if components.len() != germ_ring.len() + 1 {
            return Err(Error::NotNormalForm(format!(
                "expected {} components, got {}",
                germ_ring.len() + 1,
                components.len()
            )));
        }
        let unfolding = Unfolding {
            ring,
            germ_ring,
            t: t.to_string(),
            components,
        };
        if let Some(c) = unfolding
            .components
            .iter()
            .find(|c| !unfolding.vanishes_on_t_axis(c))
        {
            return Err(Error::NotAtOrigin(format!(
                "component `{c}` does not vanish along the parameter axis"
            )));
        }
        Ok(unfolding)
    }

    /// The trivial unfolding `(f(x), t)`.
    pub fn trivial(germ: &MapGerm, t: &str) -> Result<Unfolding> {
        let mut vars = germ.ring().vars().to_vec();
        vars.push(t.to_string());
        Unfolding::new(&vars, t, &germ.component_strings())
    }

    fn vanishes_on_t_axis(&self, c: &Polynomial) -> bool {
        let axis = Ring::new(&[self.t.as_str()]).expect("single variable");
        let mut assign = VarAssignment::new(&axis);
        for v in self.germ_ring.vars() {
            assign
                .set(v, Polynomial::zero(&axis))
                .expect("zero lives in every ring");
        }
        c.substitute(&assign).map(|p| p.is_zero()).unwrap_or(false)
    }

    pub fn source_dim(&self) -> usize {
        self.germ_ring.len()
    }

    pub fn t_var(&self) -> &str {
        &self.t
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The germ `f_{t0}`.
    pub fn specialize(&self, t0: &Rational) -> Result<MapGerm> {
        let assign = VarAssignment::new(&self.germ_ring)
            .with(&self.t, Polynomial::constant(&self.germ_ring, t0.clone()))?;
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&assign))
            .collect::<Result<Vec<_>>>()?;
        MapGerm::new(&self.germ_ring, comps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleInvariants {
    pub tuple: InvariantTuple,
    pub mu_i: i64,
    pub chi_mf: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub t: String,
    pub germ: Option<Vec<String>>,
    #[serde(flatten)]
    pub result: SampleResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleResult {
    Ok(SampleInvariants),
    Error(String),
}

/// A field that takes different values across samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variation {
    pub field: String,
    /// `(t, value)` per successful sample.
    pub values: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyVerdict {
    pub samples: Vec<Sample>,
    pub constant: bool,
    pub certificate: Vec<Variation>,
    pub failed_samples: Vec<String>,
    pub scope: &'static str,
    pub caveats: Vec<&'static str>,
}

fn evaluate(engine: &Engine, germ: &MapGerm, seed: u64) -> Result<SampleInvariants> {
    let tuple = invariant_tuple(engine, germ, seed)?.tuple;
    Ok(SampleInvariants {
        mu_i: image_milnor_number(&tuple)?,
        chi_mf: chi_mf_image(&tuple)?,
        tuple,
    })
}

/// Samples the family at `t_values` (which must contain 0 and at least two
/// nonzero values) and compares the invariants. A failing sample does not
/// stop the others but makes the verdict non-constant.
pub fn family_check(
    engine: &Engine,
    family: &Unfolding,
    t_values: &[Rational],
    seed: u64,
) -> Result<FamilyVerdict> {
    if family.source_dim() != 3 {
        return Err(Error::BadParams(format!(
            "family checks need germs C^3 -> C^4, got source dimension {}",
            family.source_dim()
        )));
    }
    let mut ts = t_values.to_vec();
    ts.sort();
    ts.dedup();
    let zero = rat(0);
    if !ts.contains(&zero) || ts.iter().filter(|t| **t != zero).count() < 2 {
        return Err(Error::BadParams(
            "parameter samples must include 0 and at least two nonzero values".into(),
        ));
    }
    let samples: Vec<Sample> = ts
        .par_iter()
        .map(|t| {
            let germ = family.specialize(t);
            let shown = germ.as_ref().ok().map(|g| g.component_strings());
            let result = match germ.and_then(|g| evaluate(engine, &g, seed)) {
                Ok(inv) => SampleResult::Ok(inv),
                Err(e) => SampleResult::Error(e.to_string()),
            };
            Sample {
                t: t.to_string(),
                germ: shown,
                result,
            }
        })
        .collect();

    let ok: Vec<(&str, &SampleInvariants)> = samples
        .iter()
        .filter_map(|s| match &s.result {
            SampleResult::Ok(inv) => Some((s.t.as_str(), inv)),
            SampleResult::Error(_) => None,
        })
        .collect();
    let failed_samples: Vec<String> = samples
        .iter()
        .filter(|s| matches!(s.result, SampleResult::Error(_)))
        .map(|s| s.t.clone())
        .collect();

    let mut certificate = Vec::new();
    if let Some((_, first)) = ok.first() {
        let mut names: Vec<&str> = Vec::new();
        for (_, inv) in &ok[1..] {
            for f in first.tuple.differing_fields(&inv.tuple) {
                if !names.contains(&f) {
                    names.push(f);
                }
            }
        }
        for (name, _) in first.tuple.fields() {
            if !names.contains(&name) {
                continue;
            }
            let values = ok
                .iter()
                .map(|(t, inv)| {
                    let v = inv
                        .tuple
                        .fields()
                        .iter()
                        .find(|(n, _)| *n == name)
                        .unwrap()
                        .1;
                    (t.to_string(), v as i64)
                })
                .collect();
            certificate.push(Variation {
                field: name.to_string(),
                values,
            });
        }
        for (label, get) in [
            (
                "mu_i",
                (|s: &SampleInvariants| s.mu_i) as fn(&SampleInvariants) -> i64,
            ),
            ("chi_mf", |s: &SampleInvariants| s.chi_mf),
        ] {
            if ok.iter().any(|(_, inv)| get(inv) != get(first)) {
                certificate.push(Variation {
                    field: label.to_string(),
                    values: ok
                        .iter()
                        .map(|(t, inv)| (t.to_string(), get(inv)))
                        .collect(),
                });
            }
        }
    }
    let constant = failed_samples.is_empty() && certificate.is_empty();
    Ok(FamilyVerdict {
        samples,
        constant,
        certificate,
        failed_samples,
        scope: SCOPE,
        caveats: CAVEATS.to_vec(),
    })
}
