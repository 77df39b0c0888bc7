//! Milnor numbers of isolated hypersurface and complete intersection
//! singularities.
//!
//! For a complete intersection `X_k = V(h_1, ..., h_k)` with every partial
//! intersection `X_i` isolated, the Lê–Greuel formula gives
//!
//! ```text
//! μ(X_i) + μ(X_{i-1}) = dim O / ((h_1, ..., h_{i-1}) + i×i minors of ∂(h_1..h_i)/∂x)
//! ```
//!
//! with `μ(X_0) = 0`. The `h_i` are seeded generic combinations of the given
//! generators; every stage must have finite colength or the seed is retried.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{jacobian, maximal_minors, rat, Polynomial};
use crate::standard_basis::{
    eliminate_linear_variables, random_invertible_matrix, Colength, Engine, IdealPresentation,
};

pub const SEED_RETRIES: u64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteKind {
    /// The ideal contains a unit: empty germ, μ = 0 by convention.
    Empty,
    /// No equations remain after eliminating linear variables: a smooth germ.
    Smooth,
    Hypersurface,
    LeGreuel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub generators: usize,
    /// `None` when the stage could not be shown to have finite colength; the
    /// attempt is then discarded.
    pub colength: Option<u64>,
    /// μ(X_i), once known.
    pub mu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub seed: u64,
    pub combination: Vec<Vec<i64>>,
    pub stages: Vec<Stage>,
    pub accepted: bool,
}

/// Audit record of how a Milnor number was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Route {
    pub kind: RouteKind,
    pub ring: Vec<String>,
    pub eliminated: Vec<String>,
    pub reduced_ring: Vec<String>,
    pub reduced_generators: Vec<String>,
    pub attempts: Vec<Attempt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorResult {
    pub mu: u64,
    pub route: Route,
}

/// μ(g) = colength of the Jacobian ideal of `g`.
pub fn hypersurface_milnor(engine: &Engine, g: &Polynomial) -> Result<MilnorResult> {
    if g.eval_at_origin() != rat(0) {
        return Err(Error::NotAtOrigin(format!("g(0) = {}", g.eval_at_origin())));
    }
    let ring = g.ring();
    let partials = ring
        .vars()
        .iter()
        .map(|v| g.derivative(v))
        .collect::<Result<Vec<_>>>()?;
    let jac = IdealPresentation::new(ring, partials)?;
    let colength = engine.colength(&jac)?;
    let Colength::Finite(mu) = colength else {
        return Err(Error::NonIsolated);
    };
    Ok(MilnorResult {
        mu,
        route: Route {
            kind: RouteKind::Hypersurface,
            ring: ring.vars().to_vec(),
            eliminated: Vec::new(),
            reduced_ring: ring.vars().to_vec(),
            reduced_generators: vec![g.to_string()],
            attempts: vec![Attempt {
                seed: 0,
                combination: vec![vec![1]],
                stages: vec![Stage {
                    generators: jac.gens().len(),
                    colength: Some(mu),
                    mu: Some(mu as i64),
                }],
                accepted: true,
            }],
        },
    })
}

/// Milnor number of the complete intersection presented by `ideal`, via the
/// Lê–Greuel chain. The empty germ (unit ideal) has μ = 0.
pub fn icis_milnor(engine: &Engine, ideal: &IdealPresentation, seed: u64) -> Result<MilnorResult> {
    let ring_names = ideal.ring().vars().to_vec();
    if engine.is_unit_ideal(ideal)? {
        return Ok(MilnorResult {
            mu: 0,
            route: Route {
                kind: RouteKind::Empty,
                ring: ring_names,
                eliminated: Vec::new(),
                reduced_ring: Vec::new(),
                reduced_generators: Vec::new(),
                attempts: Vec::new(),
            },
        });
    }
    let (reduced, eliminated) = eliminate_linear_variables(ideal);
    let mut route = Route {
        kind: RouteKind::LeGreuel,
        ring: ring_names,
        eliminated,
        reduced_ring: reduced.ring().vars().to_vec(),
        reduced_generators: reduced.gen_strings(),
        attempts: Vec::new(),
    };
    let m = reduced.gens().len();
    let nvars = reduced.ring().len();
    if m == 0 {
        route.kind = RouteKind::Smooth;
        return Ok(MilnorResult { mu: 0, route });
    }
    if m > nvars {
        return Err(Error::NotIcis(format!(
            "{m} equations in {nvars} variables after eliminating linear variables"
        )));
    }
    for attempt in 0..SEED_RETRIES {
        let s = seed.wrapping_add(attempt);
        let (result, record) = le_greuel_chain(engine, &reduced, s)?;
        route.attempts.push(record);
        if let Some(mu) = result {
            return Ok(MilnorResult { mu, route });
        }
    }
    Err(Error::NotIcis(format!(
        "no Lê–Greuel chain with finite colength at every stage for {SEED_RETRIES} seeds starting at {seed}"
    )))
}

fn le_greuel_chain(
    engine: &Engine,
    ideal: &IdealPresentation,
    seed: u64,
) -> Result<(Option<u64>, Attempt)> {
    let ring = ideal.ring();
    let gens = ideal.gens();
    let m = gens.len();
    let combination = random_invertible_matrix(m, m, seed);
    let h: Vec<Polynomial> = combination
        .iter()
        .map(|row| {
            row.iter()
                .zip(gens)
                .fold(Polynomial::zero(ring), |acc, (&a, g)| {
                    if a == 0 {
                        acc
                    } else {
                        &acc + &g.scale(&rat(a))
                    }
                })
        })
        .collect();
    let mut attempt = Attempt {
        seed,
        combination,
        stages: Vec::new(),
        accepted: false,
    };
    let mut prev_mu: i64 = 0;
    for i in 1..=m {
        let jac = jacobian(&h[..i], ring.vars())?;
        let mut stage_gens: Vec<Polynomial> = h[..i - 1].to_vec();
        stage_gens.extend(
            maximal_minors(&jac, ring)?
                .into_iter()
                .filter(|p| !p.is_zero()),
        );
        let stage = IdealPresentation::new(ring, stage_gens)?;
        let colength = engine.certified_finite_colength(&stage)?;
        let Some(c) = colength else {
            attempt.stages.push(Stage {
                generators: stage.gens().len(),
                colength,
                mu: None,
            });
            return Ok((None, attempt));
        };
        let mu = c as i64 - prev_mu;
        attempt.stages.push(Stage {
            generators: stage.gens().len(),
            colength,
            mu: Some(mu),
        });
        if mu < 0 {
            return Ok((None, attempt));
        }
        prev_mu = mu;
    }
    attempt.accepted = true;
    Ok((Some(prev_mu as u64), attempt))
}

/// Number of points in the Milnor fibre of a zero-dimensional complete
/// intersection: its colength (0 for the empty germ).
pub fn point_count(engine: &Engine, ideal: &IdealPresentation) -> Result<u64> {
    if engine.is_unit_ideal(ideal)? {
        return Ok(0);
    }
    let (reduced, _) = eliminate_linear_variables(ideal);
    match engine.colength(&reduced)? {
        Colength::Finite(n) => Ok(n),
        Colength::Infinite => Err(Error::NotZeroDimensional),
    }
}
