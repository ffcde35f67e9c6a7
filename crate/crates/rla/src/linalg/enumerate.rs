//! Budgeted enumeration of all subspaces of F^n in canonical order.
//!
//! Counts are computed first from Gaussian binomials; when the requested
//! range exceeds the budget the call fails rather than truncating.

use crate::error::Error;
use crate::field::FiniteField;
use crate::linalg::{Mat, Subspace};

/// Gaussian binomial coefficient [n choose r]_q, saturating at u128::MAX.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> u128 {
    if r > n {
        return 0;
    }
    // Row-by-row recurrence [n r] = [n-1 r-1] + q^r [n-1 r].
    let mut row: Vec<u128> = vec![1]; // [0 0]
    for _ in 1..=n {
        let mut next = vec![1u128; row.len() + 1];
        for j in 1..row.len() {
            let qp = (q as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
            let scaled = row[j].saturating_mul(qp);
            next[j] = row[j - 1].saturating_add(scaled);
        }
        next[row.len()] = 1;
        row = next;
    }
    row[r]
}

/// Number of subspaces of F^n with dimension in `dims` (inclusive range).
pub fn subspace_count(n: usize, q: u64, dims: (usize, usize)) -> u128 {
    let mut total: u128 = 0;
    for r in dims.0..=dims.1.min(n) {
        total = total.saturating_add(gaussian_binomial(n, r, q));
    }
    total
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    if r == 0 {
        return false;
    }
    let mut i = r;
    while i > 0 {
        i -= 1;
        if c[i] < n - (r - i) {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All subspaces of F^n with dimension in `dims` (default all), sorted in
/// canonical order (dimension, then lexicographic RREF entries). Fails with
/// `ResourceLimit` when the count exceeds `budget`.
pub fn enumerate_subspaces(
    f: &FiniteField,
    n: usize,
    dims: Option<(usize, usize)>,
    budget: u64,
) -> Result<Vec<Subspace>, Error> {
    let dims = dims.unwrap_or((0, n));
    let total = subspace_count(n, f.q() as u64, dims);
    if total > budget as u128 {
        return Err(Error::ResourceLimit {
            needed: total.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let q = f.q() as u64;
    let mut out: Vec<Subspace> = Vec::with_capacity(total as usize);
    for r in dims.0..=dims.1.min(n) {
        let mut of_dim: Vec<Subspace> = Vec::new();
        if r == 0 {
            of_dim.push(Subspace::zero(f, n));
        } else {
            let mut pivots: Vec<usize> = (0..r).collect();
            loop {
                // Free cells: positions right of each pivot that are not
                // themselves pivot columns, in row-major order.
                let mut cells: Vec<(usize, usize)> = Vec::new();
                for (i, &p) in pivots.iter().enumerate() {
                    for j in p + 1..n {
                        if !pivots.contains(&j) {
                            cells.push((i, j));
                        }
                    }
                }
                let count = q.pow(cells.len() as u32);
                for code in 0..count {
                    let mut m = Mat::zero(f.clone(), r, n);
                    for (i, &p) in pivots.iter().enumerate() {
                        m.set(i, p, 1);
                    }
                    let mut c = code;
                    for &(i, j) in &cells {
                        m.set(i, j, (c % q) as u16);
                        c /= q;
                    }
                    of_dim.push(Subspace::from_rref(m, pivots.clone()));
                }
                if !next_combination(&mut pivots, n) {
                    break;
                }
            }
            of_dim.sort_by(|a, b| a.canonical_cmp(b));
        }
        out.extend(of_dim);
    }
    Ok(out)
}
