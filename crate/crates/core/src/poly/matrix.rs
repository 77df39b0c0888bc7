//! Polynomial matrices: Jacobians, determinants and maximal minors.

use std::collections::HashMap;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};

pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// `J[i][j] = d gens[i] / d vars[j]`.
pub fn jacobian<S: AsRef<str>>(gens: &[Polynomial], vars: &[S]) -> Result<PolyMatrix> {
    gens.iter()
        .map(|g| vars.iter().map(|v| g.derivative(v.as_ref())).collect())
        .collect()
}

/// All `m x m` minors of an `m x n` matrix (`m <= n`), one per column subset
/// in lexicographic order of the subsets.
///
/// Row-by-row Laplace expansion with every partial minor memoised, so each
/// subset of the first `r` rows is expanded once.
pub fn maximal_minors(m: &PolyMatrix, ring: &Ring) -> Result<Vec<Polynomial>> {
    let rows = m.len();
    if rows == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let cols = m[0].len();
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::BadInput("ragged matrix".into()));
    }
    if rows > cols {
        return Ok(Vec::new());
    }
    if cols > 63 {
        return Err(Error::BadInput("matrix too wide".into()));
    }
    // level[mask] = minor of rows 0..r on the columns in mask (popcount r)
    let mut level: HashMap<u64, Polynomial> = HashMap::new();
    level.insert(0, Polynomial::one(ring));
    for (r, row) in m.iter().enumerate() {
        let mut next: HashMap<u64, Polynomial> = HashMap::new();
        for mask in subsets(cols, r + 1) {
            let mut acc = Polynomial::zero(ring);
            // expand along row r: the columns of mask in ascending order,
            // sign from the position of the removed column
            let mut pos_from_top = 0usize;
            let size = r + 1;
            for c in (0..cols).filter(|c| mask >> c & 1 == 1) {
                let sub = mask & !(1u64 << c);
                let entry = &row[c];
                if !entry.is_zero() {
                    if let Some(minor) = level.get(&sub) {
                        if !minor.is_zero() {
                            let term = entry * minor;
                            // removed column at position pos_from_top among size columns,
                            // expanding along the last row: sign (-1)^(size-1 + pos)
                            if (size - 1 + pos_from_top) % 2 == 0 {
                                acc = &acc + &term;
                            } else {
                                acc = &acc - &term;
                            }
                        }
                    }
                }
                pos_from_top += 1;
            }
            next.insert(mask, acc);
        }
        level = next;
    }
    Ok(subsets(cols, rows)
        .into_iter()
        .map(|mask| level.remove(&mask).unwrap())
        .collect())
}

/// Column subsets of size `k` of `0..n`, as bitmasks in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=(n - k) {
            rec(i + 1, n, k - 1, cur | (1u64 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

pub fn determinant(m: &PolyMatrix, ring: &Ring) -> Result<Polynomial> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::BadInput("determinant of a non-square matrix".into()));
    }
    Ok(maximal_minors(m, ring)?.pop().unwrap())
}
