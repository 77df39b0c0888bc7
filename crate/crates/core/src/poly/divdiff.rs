//! Divided differences with respect to a distinguished variable.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{Polynomial, Rational, Ring, VarAssignment};
use crate::error::{Error, Result};

/// Exact quotient `p / (a - b)` for two variables `a`, `b` of `p`'s ring.
///
/// Synthetic division in `a`; a nonzero remainder is reported as
/// [`Error::NonDivisible`].
pub fn divide_by_difference(p: &Polynomial, a: &str, b: &str) -> Result<Polynomial> {
    let ring = p.ring();
    let bpoly = Polynomial::var(ring, b)?;
    let avar = Polynomial::var(ring, a)?;
    let coeffs = p.coefficients_in(a)?;
    let d = coeffs.len() - 1;
    if d == 0 {
        return if p.is_zero() {
            Ok(p.clone())
        } else {
            Err(Error::NonDivisible(format!("{p} by ({a} - {b})")))
        };
    }
    // q_{d-1} = c_d, q_{i-1} = c_i + b q_i, remainder c_0 + b q_0.
    let mut q = vec![Polynomial::zero(ring); d];
    q[d - 1] = coeffs[d].clone();
    for i in (1..d).rev() {
        q[i - 1] = &coeffs[i] + &(&bpoly * &q[i]);
    }
    let rem = &coeffs[0] + &(&bpoly * &q[0]);
    if !rem.is_zero() {
        return Err(Error::NonDivisible(format!("{p} by ({a} - {b})")));
    }
    let mut out = Polynomial::zero(ring);
    let mut apow = Polynomial::one(ring);
    for qi in &q {
        out = &out + &(qi * &apow);
        apow = &apow * &avar;
    }
    Ok(out)
}

/// The divided difference `g[a_0, ..., a_j]` of `g` with respect to `var`.
///
/// `args` are fresh variable names; repetitions are allowed and follow the
/// confluent rule `g[a, ..., a] = (1/m!) d^m g / d var^m (a)` for `m + 1`
/// copies. The result lives in `g`'s ring with `var` removed and the distinct
/// arguments appended in order of first appearance.
pub fn divided_difference<S: AsRef<str>>(
    g: &Polynomial,
    var: &str,
    args: &[S],
) -> Result<Polynomial> {
    if args.is_empty() {
        return Err(Error::EmptyArgs);
    }
    let ring = g.ring();
    if !ring.contains(var) {
        return Err(Error::UnknownVariable(var.to_string()));
    }
    let mut distinct: Vec<String> = Vec::new();
    for a in args {
        let a = a.as_ref();
        if ring.contains(a) {
            return Err(Error::BadInput(format!(
                "divided-difference argument `{a}` is already a variable of the ring"
            )));
        }
        if !distinct.iter().any(|d| d == a) {
            distinct.push(a.to_string());
        }
    }
    let work = ring.extended(&distinct);
    let out_ring = work.without(&[var]);
    let g = g.to_ring(&work)?;

    let mut key: Vec<usize> = args
        .iter()
        .map(|a| distinct.iter().position(|d| d == a.as_ref()).unwrap())
        .collect();
    key.sort_unstable();

    let mut ctx = Ctx {
        var,
        names: &distinct,
        out_ring: &out_ring,
        memo: HashMap::new(),
        derivs: vec![g.clone()],
    };
    ctx.dd(&key)
}

struct Ctx<'a> {
    var: &'a str,
    names: &'a [String],
    out_ring: &'a Ring,
    memo: HashMap<Vec<usize>, Polynomial>,
    /// derivs[m] = d^m g / d var^m
    derivs: Vec<Polynomial>,
}

impl Ctx<'_> {
    fn eval_at(&self, p: &Polynomial, arg: usize) -> Result<Polynomial> {
        let target = p.ring();
        let a = Polynomial::var(target, &self.names[arg])?;
        let assign = VarAssignment::new(target).with(self.var, a)?;
        p.substitute(&assign)?.to_ring(self.out_ring)
    }

    fn dd(&mut self, key: &[usize]) -> Result<Polynomial> {
        if let Some(p) = self.memo.get(key) {
            return Ok(p.clone());
        }
        let first = key[0];
        let last = key[key.len() - 1];
        let result = if first == last {
            let m = key.len() - 1;
            while self.derivs.len() <= m {
                let next = self.derivs.last().unwrap().derivative(self.var)?;
                self.derivs.push(next);
            }
            let mut fact = BigInt::one();
            for i in 2..=m {
                fact *= BigInt::from(i);
            }
            let inv = Rational::new(BigInt::one(), fact);
            self.eval_at(&self.derivs[m].scale(&inv), first)?
        } else {
            let left = self.dd(&key[..key.len() - 1])?;
            let right = self.dd(&key[1..])?;
            divide_by_difference(&(&left - &right), &self.names[first], &self.names[last])?
        };
        self.memo.insert(key.to_vec(), result.clone());
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring(v: &[&str]) -> Ring {
        Ring::new(v).unwrap()
    }

    #[test]
    fn first_difference_of_square() {
        let r = ring(&["z"]);
        let g = parse_poly("z^2", &r).unwrap();
        let d = divided_difference(&g, "z", &["z1", "z2"]).unwrap();
        assert_eq!(d, parse_poly("z1+z2", d.ring()).unwrap());
    }

    #[test]
    fn second_difference_of_cube() {
        let r = ring(&["z"]);
        let g = parse_poly("z^3", &r).unwrap();
        let d = divided_difference(&g, "z", &["z1", "z2", "z3"]).unwrap();
        assert_eq!(d, parse_poly("z1+z2+z3", d.ring()).unwrap());
    }

    #[test]
    fn confluent_second_difference_of_square_is_one() {
        let r = ring(&["z"]);
        let g = parse_poly("z^2", &r).unwrap();
        let d = divided_difference(&g, "z", &["z1", "z1", "z1"]).unwrap();
        assert_eq!(d, Polynomial::one(d.ring()));
        assert_eq!(d.ring().vars(), &["z1".to_string()]);
    }

    #[test]
    fn parameters_survive() {
        let r = ring(&["x", "y", "z"]);
        let g = parse_poly("z*(z^2+x^2+y^2)", &r).unwrap();
        let d = divided_difference(&g, "z", &["z1", "z2"]).unwrap();
        assert_eq!(d.ring().vars(), &["x", "y", "z1", "z2"]);
        assert_eq!(d, parse_poly("z1^2+z1*z2+z2^2+x^2+y^2", d.ring()).unwrap());
    }

    #[test]
    fn single_argument_is_evaluation() {
        let r = ring(&["x", "z"]);
        let g = parse_poly("x*z + z^3", &r).unwrap();
        let d = divided_difference(&g, "z", &["w"]).unwrap();
        assert_eq!(d, parse_poly("x*w + w^3", d.ring()).unwrap());
    }

    #[test]
    fn errors() {
        let r = ring(&["x", "z"]);
        let g = parse_poly("z^2", &r).unwrap();
        let none: [&str; 0] = [];
        assert_eq!(divided_difference(&g, "z", &none), Err(Error::EmptyArgs));
        assert!(matches!(
            divided_difference(&g, "z", &["x"]),
            Err(Error::BadInput(_))
        ));
        let r2 = ring(&["a", "b"]);
        let p = parse_poly("a^2 + b", &r2).unwrap();
        assert!(matches!(
            divide_by_difference(&p, "a", "b"),
            Err(Error::NonDivisible(_))
        ));
    }
}
