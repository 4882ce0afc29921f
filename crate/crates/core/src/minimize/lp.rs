//! Dense simplex for small covering LPs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const EPS: f64 = 1e-11;

/// Solves `min c·x  s.t.  A x >= b, x >= 0` for `c >= 0`.
///
/// Runs Bland's-rule simplex on the dual `max b·y  s.t.  Aᵀy <= c, y >= 0`,
/// whose slack basis is feasible because `c >= 0`, and reads `x` off the
/// slack reduced costs. Returns `(x, c·x)`.
pub(crate) fn solve_covering(c: &[f64], rows: &[(Vec<f64>, f64)]) -> Result<(Vec<f64>, f64)> {
    let p = c.len();
    let q = rows.len();
    if c.iter().any(|&x| x < 0.0) {
        return Err(Error::precondition("covering LP needs a nonnegative cost vector"));
    }
    if rows.iter().any(|(a, _)| a.len() != p) {
        return Err(Error::invalid("covering LP row has the wrong length"));
    }
    let width = q + p + 1;
    let rhs = q + p;
    let mut t = vec![vec![0.0; width]; p];
    for (r, row) in t.iter_mut().enumerate() {
        for (j, (a, _)) in rows.iter().enumerate() {
            row[j] = a[r];
        }
        row[q + r] = 1.0;
        row[rhs] = c[r];
    }
    let mut obj = vec![0.0; width];
    for (j, (_, b)) in rows.iter().enumerate() {
        obj[j] = -b;
    }
    let mut basis: Vec<usize> = (q..q + p).collect();

    while let Some(enter) = (0..q + p).find(|&j| obj[j] < -EPS) {
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for r in 0..p {
            let a = t[r][enter];
            if a > EPS {
                let ratio = t[r][rhs] / a;
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best - EPS || (ratio <= best + EPS && basis[r] < basis[l]),
                };
                if better {
                    best = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else {
            return Err(Error::infeasible("covering constraints cannot be satisfied"));
        };
        let pivot = t[r][enter];
        for x in t[r].iter_mut() {
            *x /= pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && row[enter].abs() > 0.0 {
                let factor = row[enter];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= factor * y;
                }
            }
        }
        let factor = obj[enter];
        for (x, y) in obj.iter_mut().zip(&pivot_row) {
            *x -= factor * y;
        }
        basis[r] = enter;
    }
    let x: Vec<f64> = (0..p).map(|r| obj[q + r].max(0.0)).collect();
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    Ok((x, value))
}
