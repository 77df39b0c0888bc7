//! Multiple point spaces of corank-1 map-germs `(C^n, 0) -> (C^{n+1}, 0)`.
//!
//! A germ in normal form `(x_1, ..., x_{n-1}, p(x, z), q(x, z))` has its
//! `k`-th multiple point space `D^k(f)` cut out, in coordinates
//! `(x, z_1, ..., z_k)`, by the divided differences `p[z_1..z_j]` and
//! `q[z_1..z_j]` for `j = 2..k`. Restricting to the fixed points of a
//! permutation of cycle type `P` identifies the `z`'s within each cycle; the
//! generators then become confluent divided differences.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::milnor::{icis_milnor, point_count, MilnorResult};
use crate::poly::{divided_difference, Polynomial, Ring};
use crate::standard_basis::{Engine, IdealPresentation};

/// A corank-1 germ in normal form. The last ring variable is the kernel
/// direction `z`; the others are the coordinate parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct MapGerm {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl MapGerm {
    /// Checks the normal-form shape and the corank-1 condition.
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<MapGerm> {
        let n = ring.len();
        if n == 0 {
            return Err(Error::NotNormalForm(
                "source dimension must be at least 1".into(),
            ));
        }
        if components.len() != n + 1 {
            return Err(Error::NotNormalForm(format!(
                "expected {} components for a germ from C^{n}, got {}",
                n + 1,
                components.len()
            )));
        }
        let components = components
            .into_iter()
            .map(|c| c.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        for (i, c) in components.iter().take(n - 1).enumerate() {
            if *c != Polynomial::var_at(ring, i) {
                return Err(Error::NotNormalForm(format!(
                    "component {} is `{c}`, expected the coordinate `{}`",
                    i + 1,
                    ring.vars()[i]
                )));
            }
        }
        for (label, c) in [("p", &components[n - 1]), ("q", &components[n])] {
            if !num_traits::Zero::is_zero(&c.eval_at_origin()) {
                return Err(Error::NotNormalForm(format!(
                    "component {label} = `{c}` does not vanish at 0"
                )));
            }
        }
        let z = n - 1;
        let linear_z = |c: &Polynomial| {
            let dz = c.derivative_at(z);
            !num_traits::Zero::is_zero(&dz.eval_at_origin())
        };
        if linear_z(&components[n - 1]) || linear_z(&components[n]) {
            return Err(Error::NotCorankOne {
                rank: n,
                expected: n - 1,
            });
        }
        Ok(MapGerm {
            ring: ring.clone(),
            components,
        })
    }

    pub fn parse<S: AsRef<str>>(vars: &[S], components: &[S]) -> Result<MapGerm> {
        let ring = Ring::new(vars)?;
        let comps = components
            .iter()
            .map(|c| crate::poly::parse_poly(c.as_ref(), &ring))
            .collect::<Result<Vec<_>>>()?;
        MapGerm::new(&ring, comps)
    }

    pub fn source_dim(&self) -> usize {
        self.ring.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn z_var(&self) -> &str {
        &self.ring.vars()[self.ring.len() - 1]
    }

    pub fn parameters(&self) -> &[String] {
        &self.ring.vars()[..self.ring.len() - 1]
    }

    /// The two non-trivial components.
    pub fn p(&self) -> &Polynomial {
        &self.components[self.ring.len() - 1]
    }

    pub fn q(&self) -> &Polynomial {
        &self.components[self.ring.len()]
    }

    pub fn component_strings(&self) -> Vec<String> {
        self.components.iter().map(|c| c.to_string()).collect()
    }

    /// Names `z1, ..., zk` (derived from the kernel variable), fresh for the
    /// parameter ring.
    pub fn point_names(&self, k: usize) -> Vec<String> {
        let params = Ring::new(self.parameters()).expect("ring variables are distinct");
        let mut names: Vec<String> = Vec::with_capacity(k);
        for i in 1..=k {
            let mut name = params.fresh_name(&format!("{}{}", self.z_var(), i));
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        names
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.component_strings().join(", "))
    }
}

/// Validates `components` as a corank-1 germ from `C^n` in the variables
/// `vars` (kernel variable last).
pub fn validate_corank1<S: AsRef<str>>(vars: &[S], components: &[S], n: usize) -> Result<MapGerm> {
    if vars.len() != n {
        return Err(Error::NotNormalForm(format!(
            "a germ from C^{n} needs {n} source variables, got {}",
            vars.len()
        )));
    }
    MapGerm::parse(vars, components)
}

/// An integer partition, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::BadParams(format!("invalid partition {parts:?}")));
        }
        parts.sort_unstable();
        Ok(Partition(parts))
    }

    /// `(1, ..., 1)`: the identity permutation.
    pub fn trivial(k: usize) -> Partition {
        Partition(vec![1; k])
    }

    pub fn parse(text: &str) -> Result<Partition> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadParams(format!("invalid partition `{text}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn dd_generators(f: &MapGerm, args: &[String], target: &Ring) -> Result<Vec<Polynomial>> {
    let k = args.len();
    let mut gens = Vec::with_capacity(2 * (k - 1));
    for g in [f.p(), f.q()] {
        for j in 2..=k {
            let d = divided_difference(g, f.z_var(), &args[..j])?;
            gens.push(d.to_ring(target)?);
        }
    }
    Ok(gens)
}

/// `D^k(f)` in the ring `(x_1, ..., x_{n-1}, z_1, ..., z_k)`, with the
/// `2(k-1)` divided-difference generators.
pub fn dk_ideal(f: &MapGerm, k: usize) -> Result<IdealPresentation> {
    if k < 2 {
        return Err(Error::BadParams(format!(
            "multiple point spaces need k >= 2, got {k}"
        )));
    }
    let names = f.point_names(k);
    let params = Ring::new(f.parameters())?;
    let target = params.extended(&names);
    let gens = dd_generators(f, &names, &target)?;
    IdealPresentation::new(&target, gens)
}

/// `D^k(f, P)`: `D^k(f)` restricted to the fixed points of the permutation
/// whose cycles are consecutive blocks of `(z_1, ..., z_k)` in ascending part
/// order. Each block keeps its first variable.
pub fn dk_partition_ideal(
    f: &MapGerm,
    k: usize,
    partition: &Partition,
) -> Result<IdealPresentation> {
    if partition.total() != k {
        return Err(Error::BadParams(format!(
            "{partition} is not a partition of {k}"
        )));
    }
    if partition.is_trivial() {
        return dk_ideal(f, k);
    }
    if k < 2 {
        return Err(Error::BadParams(format!(
            "multiple point spaces need k >= 2, got {k}"
        )));
    }
    let names = f.point_names(k);
    let mut args = Vec::with_capacity(k);
    let mut survivors = Vec::new();
    let mut start = 0;
    for &part in partition.parts() {
        survivors.push(names[start].clone());
        for _ in 0..part {
            args.push(names[start].clone());
        }
        start += part;
    }
    let params = Ring::new(f.parameters())?;
    let target = params.extended(&survivors);
    let gens = dd_generators(f, &args, &target)?;
    IdealPresentation::new(&target, gens)
}

/// 1 when `D^k(f)` is a non-empty germ, 0 otherwise.
pub fn beta_k(engine: &Engine, f: &MapGerm, k: usize) -> Result<u8> {
    let ideal = dk_ideal(f, k)?;
    Ok(u8::from(!engine.is_unit_ideal(&ideal)?))
}

/// Invariants of a corank-1 germ `C^3 -> C^4` that feed the Euler
/// characteristic formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct InvariantTuple {
    pub mu_d2: u64,
    pub mu_d2_h: u64,
    pub mu_d3: u64,
    pub mu_d3_h1: u64,
    pub beta2: u8,
    pub beta3: u8,
    pub beta4: u8,
    /// Number of quadruple points of a stable perturbation.
    pub q: u64,
}

impl InvariantTuple {
    /// Field names paired with values, in declaration order.
    pub fn fields(&self) -> [(&'static str, u64); 8] {
        [
            ("mu_d2", self.mu_d2),
            ("mu_d2_h", self.mu_d2_h),
            ("mu_d3", self.mu_d3),
            ("mu_d3_h1", self.mu_d3_h1),
            ("beta2", self.beta2.into()),
            ("beta3", self.beta3.into()),
            ("beta4", self.beta4.into()),
            ("q", self.q),
        ]
    }

    /// Names of the fields on which `self` and `other` differ.
    pub fn differing_fields(&self, other: &InvariantTuple) -> Vec<&'static str> {
        self.fields()
            .iter()
            .zip(other.fields().iter())
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| a.0)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceReport {
    pub name: String,
    pub k: usize,
    pub partition: Partition,
    pub ring: Vec<String>,
    pub generators: Vec<String>,
    pub empty: bool,
    pub milnor: MilnorResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleComputation {
    pub tuple: InvariantTuple,
    pub spaces: Vec<SpaceReport>,
    /// Points in the Milnor fibre of `D^4(f)`: every quadruple point of a
    /// stable perturbation contributes one point per ordering of its sheets.
    pub d4_points: u64,
}

/// Number of orderings of the four sheets through a quadruple point.
pub const QUADRUPLE_POINT_ORDERINGS: u64 = 24;

/// Computes a space's Milnor number with its report.
pub fn space_milnor(
    engine: &Engine,
    f: &MapGerm,
    k: usize,
    partition: &Partition,
    seed: u64,
) -> Result<SpaceReport> {
    let ideal = dk_partition_ideal(f, k, partition)?;
    let name = space_name(k, partition);
    let milnor = icis_milnor(engine, &ideal, seed).map_err(|e| e.in_space(name.clone()))?;
    Ok(SpaceReport {
        name,
        k,
        partition: partition.clone(),
        ring: ideal.ring().vars().to_vec(),
        generators: ideal.gen_strings(),
        empty: milnor.route.kind == crate::milnor::RouteKind::Empty,
        milnor,
    })
}

pub fn space_name(k: usize, partition: &Partition) -> String {
    if partition.is_trivial() {
        format!("D^{k}")
    } else {
        format!("D^{k}{partition}")
    }
}

/// The invariant tuple of a germ `C^3 -> C^4`.
pub fn invariant_tuple(engine: &Engine, f: &MapGerm, seed: u64) -> Result<TupleComputation> {
    if f.source_dim() != 3 {
        return Err(Error::BadParams(format!(
            "invariant tuples are defined for germs C^3 -> C^4, got source dimension {}",
            f.source_dim()
        )));
    }
    let specs: Vec<(usize, Partition)> = vec![
        (2, Partition::trivial(2)),
        (2, Partition(vec![2])),
        (3, Partition::trivial(3)),
        (3, Partition(vec![1, 2])),
    ];
    let spaces = specs
        .par_iter()
        .map(|(k, p)| space_milnor(engine, f, *k, p, seed))
        .collect::<Result<Vec<_>>>()?;
    let d4 = dk_ideal(f, 4)?;
    let d4_points = point_count(engine, &d4).map_err(|e| e.in_space("D^4"))?;
    if d4_points % QUADRUPLE_POINT_ORDERINGS != 0 {
        return Err(Error::NotIcis(format!(
            "D^4 has {d4_points} points, not a multiple of {QUADRUPLE_POINT_ORDERINGS}"
        )));
    }
    let beta = |k: usize| -> Result<u8> { Ok(u8::from(!engine.is_unit_ideal(&dk_ideal(f, k)?)?)) };
    let tuple = InvariantTuple {
        mu_d2: spaces[0].milnor.mu,
        mu_d2_h: spaces[1].milnor.mu,
        mu_d3: spaces[2].milnor.mu,
        mu_d3_h1: spaces[3].milnor.mu,
        beta2: beta(2)?,
        beta3: beta(3)?,
        beta4: u8::from(d4_points > 0),
        q: d4_points / QUADRUPLE_POINT_ORDERINGS,
    };
    Ok(TupleComputation {
        tuple,
        spaces,
        d4_points,
    })
}
