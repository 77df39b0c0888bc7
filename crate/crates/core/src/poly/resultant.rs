use super::{determinant, PolyMatrix, Polynomial};
use crate::error::{Error, Result};

/// Sylvester matrix of `p` and `q` with respect to `var`.
///
/// Rows `0..deg q` hold shifted coefficients of `p`, the remaining `deg p`
/// rows hold shifted coefficients of `q`, highest power first.
pub fn sylvester_matrix(p: &Polynomial, q: &Polynomial, var: &str) -> Result<PolyMatrix> {
    let ring = p.ring();
    let q = q.to_ring(ring)?;
    let pc = p.coefficients_in(var)?;
    let qc = q.coefficients_in(var)?;
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m == 0 || p.is_zero() || n == 0 || q.is_zero() {
        return Err(Error::ZeroDegree(var.to_string()));
    }
    let size = m + n;
    let zero = Polynomial::zero(ring);
    let mut mat = vec![vec![zero; size]; size];
    for i in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    Ok(mat)
}

/// Resultant of `p` and `q` with respect to `var`, as the exact Sylvester
/// determinant.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: &str) -> Result<Polynomial> {
    let mat = sylvester_matrix(p, q, var)?;
    determinant(&mat, p.ring())
}
