//! Standard bases in the local ring at the origin and local quotient
//! dimensions (colengths).

mod mora;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use num_traits::Zero;

use crate::poly::{rat, Monomial, Polynomial, Rational, Ring, VarAssignment};
use mora::{monomials_below, Exp, Mora, Terms, MAX_VARS};

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// First truncation degree tried before falling back to an untruncated run.
const FIRST_TRUNCATION: u32 = 6;
/// Largest number of monomials below the truncation degree that a truncated
/// attempt may work with.
const TRUNCATION_BUDGET: u64 = 200_000;
const MAX_TRUNCATION: u32 = 1 << 12;
/// Smaller budget for searches that may give up: a stage of positive
/// dimension is then rejected quickly.
const CERTIFY_BUDGET: u64 = 20_000;
/// Prime used to probe whether a rational truncated search can succeed.
pub const PROBE_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingKind {
    /// `ds`: lower degree is larger; ties by reverse lexicographic order.
    #[default]
    NegDegRevLex,
    /// `Ds`: lower degree is larger; ties by lexicographic order.
    NegDegLex,
}

/// A local monomial ordering (`1` is the largest monomial).
///
/// `var_order`, when given, permutes the ring before the ordering is applied;
/// otherwise the ring's declared order is used.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LocalOrdering {
    pub kind: OrderingKind,
    pub var_order: Option<Vec<String>>,
}

impl LocalOrdering {
    pub fn new(kind: OrderingKind) -> LocalOrdering {
        LocalOrdering {
            kind,
            var_order: None,
        }
    }

    pub fn with_var_order<S: AsRef<str>>(mut self, vars: &[S]) -> LocalOrdering {
        self.var_order = Some(vars.iter().map(|v| v.as_ref().to_string()).collect());
        self
    }
}

/// Generators of an ideal of the local ring at the origin of `ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<IdealPresentation> {
        let gens = gens
            .into_iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealPresentation {
            ring: ring.clone(),
            gens,
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<IdealPresentation> {
        let gens = gens
            .iter()
            .map(|g| crate::poly::parse_poly(g.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Colength {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Colength::Finite(n) => s.serialize_u64(*n),
            Colength::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldMode {
    #[default]
    Rational,
    Prime(u64),
}

impl FieldMode {
    pub fn label(&self) -> String {
        match self {
            FieldMode::Rational => "rational".into(),
            FieldMode::Prime(p) => format!("fp:{p}"),
        }
    }
}

/// A computed standard basis. Elements are monic and sorted by decreasing
/// leading monomial; `truncation = Some(d)` records that the maximal ideal to
/// the power `d` was detected inside the ideal.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    pub ring: Ring,
    pub elements: Vec<Polynomial>,
    pub leading: Vec<Monomial>,
    pub truncation: Option<u32>,
    pub colength: Colength,
    pub steps: u64,
}

impl StandardBasis {
    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }
}

/// Settings shared by every standard-basis computation.
#[derive(Clone, Debug)]
pub struct Engine {
    pub ordering: LocalOrdering,
    pub max_steps: u64,
    pub field: FieldMode,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            ordering: LocalOrdering::default(),
            max_steps: DEFAULT_MAX_STEPS,
            field: FieldMode::Rational,
        }
    }
}

impl Engine {
    pub fn with_ordering(mut self, ordering: LocalOrdering) -> Engine {
        self.ordering = ordering;
        self
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Engine {
        self.max_steps = max_steps;
        self
    }

    pub fn with_field(mut self, field: FieldMode) -> Result<Engine> {
        if let FieldMode::Prime(p) = field {
            PrimeField::new(p)?;
        }
        self.field = field;
        Ok(self)
    }

    pub fn standard_basis(&self, ideal: &IdealPresentation) -> Result<StandardBasis> {
        match self.field {
            FieldMode::Rational => self.standard_basis_in(
                &Rationals,
                ideal,
                true,
                FIRST_TRUNCATION,
                MAX_TRUNCATION,
                TRUNCATION_BUDGET,
            ),
            FieldMode::Prime(p) => self.standard_basis_in(
                &PrimeField::new(p)?,
                ideal,
                true,
                FIRST_TRUNCATION,
                MAX_TRUNCATION,
                TRUNCATION_BUDGET,
            ),
        }
        .map(|b| b.expect("untruncated fallback always yields a basis").0)
    }

    /// The colength when the truncated search alone proves it finite, `None`
    /// otherwise. Never runs the untruncated fallback, so an ideal of positive
    /// dimension costs at most the truncation budget; `None` does not
    /// certify infinite colength.
    ///
    /// Over the rationals the search is first run modulo [`PROBE_PRIME`],
    /// where coefficients stay small. If the staircase does not close there,
    /// the answer is `None` at once; otherwise the rational search is capped
    /// at the degree where the probe closed. The probe only decides when to
    /// give up, so every returned value is computed over the rationals.
    pub fn certified_finite_colength(&self, ideal: &IdealPresentation) -> Result<Option<u64>> {
        let basis = match self.field {
            FieldMode::Rational => {
                let probe = self.standard_basis_in(
                    &PrimeField::new(PROBE_PRIME)?,
                    ideal,
                    false,
                    FIRST_TRUNCATION,
                    MAX_TRUNCATION,
                    CERTIFY_BUDGET,
                );
                // Start the exact run just above the corner seen modulo p, so
                // the rational search never works at a needlessly high degree.
                let (first, cap) = match probe {
                    Ok(None) => return Ok(None),
                    Ok(Some((b, closed))) => {
                        let cap = closed.unwrap_or(MAX_TRUNCATION);
                        let first = b.truncation.map_or(FIRST_TRUNCATION, |t| (t + 1).min(cap));
                        (first, cap)
                    }
                    // a denominator divisible by the probe prime
                    Err(Error::NotInField(_)) => (FIRST_TRUNCATION, MAX_TRUNCATION),
                    Err(e) => return Err(e),
                };
                match self.standard_basis_in(
                    &Rationals,
                    ideal,
                    false,
                    first,
                    cap,
                    CERTIFY_BUDGET,
                )? {
                    Some(b) => Some(b),
                    // an unlucky prime: the corner over Q sits higher
                    None if first > FIRST_TRUNCATION => self.standard_basis_in(
                        &Rationals,
                        ideal,
                        false,
                        FIRST_TRUNCATION,
                        MAX_TRUNCATION,
                        CERTIFY_BUDGET,
                    )?,
                    None => None,
                }
            }
            FieldMode::Prime(p) => self.standard_basis_in(
                &PrimeField::new(p)?,
                ideal,
                false,
                FIRST_TRUNCATION,
                MAX_TRUNCATION,
                CERTIFY_BUDGET,
            )?,
        };
        Ok(basis.and_then(|(b, _)| b.colength.finite()))
    }

    /// `max_truncation` caps the truncated search; without `fallback` the
    /// result is `None` when no truncation up to the cap closes the
    /// staircase. The second component is the truncation degree that closed.
    fn standard_basis_in<F: Field>(
        &self,
        field: &F,
        ideal: &IdealPresentation,
        fallback: bool,
        first_truncation: u32,
        max_truncation: u32,
        budget: u64,
    ) -> Result<Option<(StandardBasis, Option<u32>)>> {
        let ring = match &self.ordering.var_order {
            Some(order) => {
                let r = Ring::new(order)?;
                if r.len() != ideal.ring.len() || ideal.ring.vars().iter().any(|v| !r.contains(v)) {
                    return Err(Error::BadParams(format!(
                        "ordering variables {:?} do not match ring {:?}",
                        order,
                        ideal.ring.vars()
                    )));
                }
                r
            }
            None => ideal.ring.clone(),
        };
        let nv = ring.len();
        if nv > MAX_VARS {
            return Err(Error::BadParams(format!(
                "standard bases support at most {MAX_VARS} variables, got {nv}"
            )));
        }
        let sorter = Mora::new(field, self.ordering.kind, nv, self.max_steps);
        let mut gens: Vec<Terms<F::Elem>> = Vec::new();
        for g in &ideal.gens {
            let g = g.to_ring(&ring)?;
            let mut t = Vec::with_capacity(g.num_terms());
            for (m, c) in g.terms() {
                let c = field.from_rational(c)?;
                if !field.is_zero(&c) {
                    t.push((Exp::from_slice(m.exponents())?, c));
                }
            }
            sorter.sort_terms(&mut t);
            gens.push(t);
        }
        // Work modulo m^d for growing d. Once the staircase closes below d,
        // m^c lies in I + m^d for some c < d, hence in I by Nakayama, and the
        // truncated basis is a basis of I itself.
        let mut out = None;
        let mut spent = 0;
        let mut d = first_truncation;
        let mut closed_at = None;
        while d <= max_truncation && monomials_below(nv, d) <= budget {
            let attempt = Mora::new(field, self.ordering.kind, nv, self.max_steps)
                .with_truncation(d)
                .run(gens.clone())?;
            spent += attempt.steps;
            if attempt.truncation.map_or(true, |t| t < d) {
                out = Some(attempt);
                closed_at = Some(d);
                break;
            }
            d *= 2;
        }
        let mut out = match out {
            Some(o) => o,
            None if fallback => {
                Mora::new(field, self.ordering.kind, nv, self.max_steps).run(gens)?
            }
            None => return Ok(None),
        };
        out.steps += spent;
        let lms: Vec<Exp> = out.basis.iter().map(|p| p[0].0).collect();
        let colength = match mora::count_standard(&lms, nv, out.truncation, u64::MAX) {
            Some((n, _)) => Colength::Finite(n),
            None => Colength::Infinite,
        };
        let to_mono =
            |e: &Exp| Monomial::from_exponents(e.e[..nv].iter().map(|&x| x as u32).collect());
        let elements = out
            .basis
            .iter()
            .map(|p| {
                let poly = Polynomial::from_terms(
                    &ring,
                    p.iter().map(|(e, c)| (to_mono(e), field.to_rational(c))),
                );
                poly.to_ring(&ideal.ring)
            })
            .collect::<Result<Vec<_>>>()?;
        let leading = out
            .basis
            .iter()
            .map(|p| {
                Polynomial::monomial(&ring, to_mono(&p[0].0), Rational::from_integer(1.into()))
                    .to_ring(&ideal.ring)
                    .map(|m| m.terms().next().unwrap().0.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some((
            StandardBasis {
                ring: ideal.ring.clone(),
                elements,
                leading,
                truncation: out.truncation,
                colength,
                steps: out.steps,
            },
            closed_at,
        )))
    }

    /// Dimension of the local quotient `O / I`.
    pub fn colength(&self, ideal: &IdealPresentation) -> Result<Colength> {
        Ok(self.standard_basis(ideal)?.colength)
    }

    /// True when the ideal contains a local unit, i.e. its germ is empty.
    ///
    /// The local ring has a unique maximal ideal, so the ideal is proper
    /// exactly when every generator vanishes at the origin. No standard basis
    /// is needed.
    pub fn is_unit_ideal(&self, ideal: &IdealPresentation) -> Result<bool> {
        Ok(ideal.gens.iter().any(|g| !g.constant_term().is_zero()))
    }
}

/// Applies the linear coordinate change `x_i ↦ Σ_j a_ij x_j` with small random
/// integer entries drawn from `seed`. Seed 0 is the identity. Returns the new
/// presentation and the matrix used.
pub fn generic_linear_change(
    ideal: &IdealPresentation,
    seed: u64,
) -> (IdealPresentation, Vec<Vec<i64>>) {
    let n = ideal.ring.len();
    let matrix = random_invertible_matrix(n, n, seed);
    let ring = &ideal.ring;
    let mut assign = VarAssignment::new(ring);
    for (i, row) in matrix.iter().enumerate() {
        let mut img = Polynomial::zero(ring);
        for (j, &a) in row.iter().enumerate() {
            if a != 0 {
                img = &img + &Polynomial::var_at(ring, j).scale(&rat(a));
            }
        }
        assign
            .set(&ring.vars()[i], img)
            .expect("image lives in the same ring");
    }
    let gens = ideal
        .gens
        .iter()
        .map(|g| g.substitute(&assign).expect("all variables are assigned"))
        .collect();
    (
        IdealPresentation {
            ring: ring.clone(),
            gens,
        },
        matrix,
    )
}

/// A `rows x cols` integer matrix of full rank with nonzero entries in
/// `-9..=9`,
/// deterministic in `seed`; seed 0 gives the identity (padded with zeros).
pub fn random_invertible_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<i64>> {
    if seed == 0 {
        return (0..rows)
            .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        let v = rng.gen_range(1..=9);
                        if rng.gen_bool(0.5) {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        if rank(&m) == rows.min(cols) {
            return m;
        }
    }
}

fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !Zero::is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !Zero::is_zero(&a[i][c]) {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let v = &a[r][k] * &f;
                    a[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Removes variables that a generator determines linearly.
///
/// A generator `g = c·v + r` with `c` a nonzero constant, `r` free of `v` and
/// `g(0) = 0` identifies the local ring of the ideal with that of the
/// remaining generators after `v ↦ -r/c`. Repeats until no such generator is
/// left; zero generators are dropped. Returns the reduced presentation and the
/// eliminated variables in order.
pub fn eliminate_linear_variables(ideal: &IdealPresentation) -> (IdealPresentation, Vec<String>) {
    let mut ring = ideal.ring.clone();
    let mut gens: Vec<Polynomial> = ideal
        .gens
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    let mut eliminated = Vec::new();
    'outer: loop {
        for (gi, g) in gens.iter().enumerate() {
            if !g.constant_term().is_zero() {
                continue;
            }
            // prefer the last variable so parameters like x, y survive longest
            for v in ring.vars().iter().rev() {
                let Some((c, rest)) = linear_split(g, v) else {
                    continue;
                };
                let v = v.clone();
                let target = ring.without(&[v.as_str()]);
                let image = rest
                    .scale(&(-c.recip()))
                    .to_ring(&target)
                    .expect("rest is free of v");
                let assign = VarAssignment::new(&target)
                    .with(&v, image)
                    .expect("image lives in target");
                let mut next = Vec::with_capacity(gens.len() - 1);
                for (j, h) in gens.iter().enumerate() {
                    if j == gi {
                        continue;
                    }
                    let s = h.substitute(&assign).expect("all variables covered");
                    if !s.is_zero() {
                        next.push(s);
                    }
                }
                gens = next;
                ring = target;
                eliminated.push(v);
                continue 'outer;
            }
        }
        break;
    }
    (IdealPresentation { ring, gens }, eliminated)
}

/// `Some((c, r))` when `g = c·v + r` with `c` a nonzero constant and `r` free of `v`.
fn linear_split(g: &Polynomial, v: &str) -> Option<(Rational, Polynomial)> {
    let coeffs = g.coefficients_in(v).ok()?;
    if coeffs.len() != 2 || !coeffs[1].is_constant() || coeffs[1].is_zero() {
        return None;
    }
    Some((coeffs[1].constant_term(), coeffs[0].clone()))
}
