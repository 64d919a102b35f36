//! Exact Gauss-Jordan elimination over `Q(sqrt d)`.

use crate::coeffring::Scalar;

/// Result of solving `A v = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOutcome {
    /// A solution with free columns set to zero. `free` is empty when unique.
    Solved { values: Vec<Scalar>, free: Vec<usize> },
    /// Row `row` (in input order) reduces to `0 = nonzero`.
    Inconsistent { row: usize },
}

/// Solves the dense system whose rows are `(coefficients, rhs)`.
///
/// Pivots are taken column by column in order; any nonzero entry is an exact
/// pivot, so the first one found is used.
pub fn solve(rows: Vec<(Vec<Scalar>, Scalar)>, ncols: usize) -> LinearOutcome {
    let mut rows: Vec<(usize, Vec<Scalar>, Scalar)> = rows
        .into_iter()
        .enumerate()
        .map(|(i, (c, r))| (i, c, r))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row slot, column)
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r].1[col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next].1[col].inv().expect("nonzero pivot");
        let (_, pc, pr) = &mut rows[next];
        for v in pc.iter_mut() {
            *v = &*v * &inv;
        }
        *pr = &*pr * &inv;
        let (pivot_coeffs, pivot_rhs) = (rows[next].1.clone(), rows[next].2.clone());
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row.1[col].is_zero() {
                continue;
            }
            let factor = row.1[col].clone();
            for (v, p) in row.1.iter_mut().zip(&pivot_coeffs) {
                if !p.is_zero() {
                    *v = &*v - &(&factor * p);
                }
            }
            row.2 = &row.2 - &(&factor * &pivot_rhs);
        }
        pivots.push((next, col));
        next += 1;
    }
    if let Some((orig, _, _)) = rows[next..].iter().find(|(_, _, r)| !r.is_zero()) {
        return LinearOutcome::Inconsistent { row: *orig };
    }
    let mut values = vec![Scalar::zero(); ncols];
    for (slot, col) in &pivots {
        values[*col] = rows[*slot].2.clone();
    }
    let free = (0..ncols)
        .filter(|c| !pivots.iter().any(|(_, pc)| pc == c))
        .collect();
    LinearOutcome::Solved { values, free }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1
        let out = solve(vec![(vec![s(1), s(1)], s(3)), (vec![s(1), s(-1)], s(1))], 2);
        assert_eq!(
            out,
            LinearOutcome::Solved {
                values: vec![s(2), s(1)],
                free: vec![]
            }
        );
    }

    #[test]
    fn inconsistent() {
        let out = solve(vec![(vec![s(1)], s(1)), (vec![s(2)], s(3))], 1);
        assert_eq!(out, LinearOutcome::Inconsistent { row: 1 });
        let out = solve(vec![(vec![s(0)], s(5))], 1);
        assert_eq!(out, LinearOutcome::Inconsistent { row: 0 });
    }

    #[test]
    fn free_columns_set_to_zero() {
        let out = solve(vec![(vec![s(0), s(2)], s(4))], 2);
        assert_eq!(
            out,
            LinearOutcome::Solved {
                values: vec![s(0), s(2)],
                free: vec![0]
            }
        );
    }
}
