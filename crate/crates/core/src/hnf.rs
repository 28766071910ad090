//! Row-style Hermite normal form over the integers.
//!
//! Pivots are found column by column, left to right. Pivot entries are made
//! positive, every other row's entry in a pivot column is reduced into
//! `[0, pivot)`, and pivot rows end up sorted by pivot column. The optional
//! transform matrix `U` satisfies `U * input = hnf`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) struct Hnf {
    pub rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, ascending in both components.
    pub pivots: Vec<(usize, usize)>,
    pub transform: Option<Vec<Vec<BigInt>>>,
}

pub(crate) fn row_hnf(mut m: Vec<Vec<BigInt>>, want_transform: bool) -> Hnf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut u: Option<Vec<Vec<BigInt>>> = want_transform.then(|| {
        (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    });

    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclid across the rows below until one nonzero entry remains in
        // this column.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if m[i][col].is_zero() {
                    continue;
                }
                best = match best {
                    Some(b) if m[b][col].abs() <= m[i][col].abs() => Some(b),
                    _ => Some(i),
                };
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            if let Some(u) = u.as_mut() {
                u.swap(pivot_row, b);
            }
            let mut reduced_any = false;
            let pivot_val = m[pivot_row][col].clone();
            for i in pivot_row + 1..rows {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&pivot_val);
                row_sub(&mut m, i, pivot_row, &q);
                if let Some(u) = u.as_mut() {
                    row_sub(u, i, pivot_row, &q);
                }
                reduced_any = true;
            }
            if !reduced_any {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for v in &mut m[pivot_row] {
                *v = -&*v;
            }
            if let Some(u) = u.as_mut() {
                for v in &mut u[pivot_row] {
                    *v = -&*v;
                }
            }
        }
        // reduce the rows above into [0, pivot)
        let pivot_val = m[pivot_row][col].clone();
        for i in 0..pivot_row {
            if m[i][col].is_zero() {
                continue;
            }
            let q = m[i][col].div_floor(&pivot_val);
            if q.is_zero() {
                continue;
            }
            row_sub(&mut m, i, pivot_row, &q);
            if let Some(u) = u.as_mut() {
                row_sub(u, i, pivot_row, &q);
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }

    Hnf {
        rows: m,
        pivots,
        transform: u,
    }
}

fn row_sub(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t -= q * s;
    }
}

/// Solves `y * a = c` over the integers, or returns `None` when no integral
/// solution exists. `a` must have full column rank (every column of its HNF is
/// a pivot column); columns that cannot be matched exactly make the system
/// non-integral or unsolvable.
pub(crate) fn solve_left(a: Vec<Vec<BigInt>>, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let h = row_hnf(a, true);
    let u = h.transform.expect("transform requested");
    let mut y_h = vec![BigInt::zero(); rows];
    let mut resid: Vec<BigInt> = c.to_vec();
    for &(r, col) in &h.pivots {
        let (q, rem) = resid[col].div_rem(&h.rows[r][col]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (t, s) in resid.iter_mut().zip(h.rows[r].iter()) {
                *t -= &q * s;
            }
        }
        y_h[r] = q;
    }
    if resid.iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); rows];
    for (i, coeff) in y_h.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (t, s) in y.iter_mut().zip(u[i].iter()) {
            *t += coeff * s;
        }
    }
    Some(y)
}
