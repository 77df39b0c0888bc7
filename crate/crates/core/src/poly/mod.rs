//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a [`Ring`], an ordered list of variable names.
//! Terms are kept in a sparse map keyed by [`Monomial`]; the map order is
//! degree-then-lexicographic on the ring's declared variable order, which
//! makes printing and hashing deterministic.

mod divdiff;
mod matrix;
mod parse;
mod resultant;

pub use divdiff::{divide_by_difference, divided_difference};
pub use matrix::{determinant, jacobian, maximal_minors, PolyMatrix};
pub use parse::parse_poly;
pub use resultant::{resultant, sylvester_matrix};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of variable names.
#[derive(Clone)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Ring> {
        let mut seen = std::collections::BTreeSet::new();
        for v in vars {
            if !seen.insert(v.as_ref()) {
                return Err(Error::DuplicateVariable(v.as_ref().to_string()));
            }
        }
        Ok(Ring {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Ring with `extra` appended (names already present are skipped).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Ring {
        let mut vars: Vec<String> = self.vars.to_vec();
        for e in extra {
            if !vars.iter().any(|v| v == e.as_ref()) {
                vars.push(e.as_ref().to_string());
            }
        }
        Ring { vars: vars.into() }
    }

    /// Ring with the named variables dropped.
    pub fn without<S: AsRef<str>>(&self, drop: &[S]) -> Ring {
        let vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| !drop.iter().any(|d| d.as_ref() == v.as_str()))
            .cloned()
            .collect();
        Ring { vars: vars.into() }
    }

    /// A name not yet used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.contains(&name) {
            name.push('_');
        }
        name
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", &*self.vars)
    }
}

/// Exponent vector indexed by the ring's variable order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(nvars: usize, idx: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Degree first, then lexicographic with the first ring variable largest.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Polynomial> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var_at(ring, idx))
    }

    pub fn var_at(ring: &Ring, idx: usize) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.terms
            .insert(Monomial::var(ring.len(), idx), Rational::one());
        p
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Polynomial {
        assert_eq!(m.0.len(), ring.len(), "monomial arity does not match ring");
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in ascending degree-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree among the terms (the order of vanishing at 0).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: &str) -> Result<Option<u32>> {
        let i = self.idx(var)?;
        Ok(self.terms.keys().map(|m| m.0[i]).max())
    }

    pub fn involves(&self, var: &str) -> bool {
        match self.ring.index_of(var) {
            Some(i) => self.terms.keys().any(|m| m.0[i] > 0),
            None => false,
        }
    }

    /// Variables that actually occur, in ring order.
    pub fn support(&self) -> Vec<String> {
        (0..self.ring.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.ring.vars[i].clone())
            .collect()
    }

    fn idx(&self, var: &str) -> Result<usize> {
        self.ring
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.idx(var)?;
        Ok(self.derivative_at(i))
    }

    pub(crate) fn derivative_at(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[i] -= 1;
            out.add_term(nm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Coefficients as a univariate polynomial in `var`: entry `i` multiplies `var^i`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Polynomial>> {
        let i = self.idx(var)?;
        let deg = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut nm = m.clone();
            nm.0[i] = 0;
            out[e].add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Re-embeds the polynomial into `target`, which must contain every variable
    /// the polynomial actually uses.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.len());
        for (i, v) in self.ring.vars.iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match target.index_of(v) {
                Some(j) => map.push(Some(j)),
                None if !used => map.push(None),
                None => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Simultaneous substitution; see [`VarAssignment`].
    pub fn substitute(&self, assignment: &VarAssignment) -> Result<Polynomial> {
        let target = &assignment.target;
        let mut images: Vec<Polynomial> = Vec::with_capacity(self.ring.len());
        for (i, v) in self.ring.vars.iter().enumerate() {
            if let Some(p) = assignment.map.get(v) {
                images.push(p.clone());
            } else if let Some(j) = target.index_of(v) {
                images.push(Polynomial::var_at(target, j));
            } else if self.terms.keys().any(|m| m.0[i] > 0) {
                return Err(Error::UnknownVariable(v.clone()));
            } else {
                images.push(Polynomial::zero(target));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Value at the origin.
    pub fn eval_at_origin(&self) -> Rational {
        self.constant_term()
    }

    /// Multiplies by the lcm of the denominators and divides by the gcd of the
    /// numerators, leaving a positive leading coefficient (in print order).
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let lead = self.terms.values().next_back().unwrap();
        let sign = if lead.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        self.scale(&Rational::new(den * sign, num))
    }

    /// `Some(c)` when `self == c * other` for a rational `c`.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        self.check_ring(other);
        if self.terms.len() != other.terms.len() || other.is_zero() {
            return if self.is_zero() && other.is_zero() {
                Some(Rational::one())
            } else {
                None
            };
        }
        let (m0, c0) = other.terms.iter().next().unwrap();
        let r = self.coefficient(m0) / c0;
        if r.is_zero() {
            return None;
        }
        if other.scale(&r) == *self {
            Some(r)
        } else {
            None
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars[i], e)),
        }
    }
    parts.join("*")
}

/// Prints in the input grammar, highest degree first.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = fmt_monomial(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Simultaneous substitution `var ↦ polynomial`, with all images in `target`.
/// Variables without an image keep their name and must exist in `target`.
#[derive(Clone, Debug)]
pub struct VarAssignment {
    target: Ring,
    map: BTreeMap<String, Polynomial>,
}

impl VarAssignment {
    pub fn new(target: &Ring) -> VarAssignment {
        VarAssignment {
            target: target.clone(),
            map: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, var: &str, image: Polynomial) -> Result<&mut Self> {
        let image = image.to_ring(&self.target)?;
        self.map.insert(var.to_string(), image);
        Ok(self)
    }

    pub fn with(mut self, var: &str, image: Polynomial) -> Result<Self> {
        self.set(var, image)?;
        Ok(self)
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }
}
