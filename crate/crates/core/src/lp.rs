//! Exact feasibility of `A x = b, x ≥ 0` over the rationals.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOutcome {
    /// A basic nonnegative solution.
    Feasible(Vec<BigRational>),
    /// The equations themselves are contradictory; `row` is an input row
    /// reduced to `0 = c ≠ 0`.
    Inconsistent { row: usize },
    /// Consistent, but every solution has a negative coordinate.
    Infeasible,
}

/// Gauss–Jordan elimination followed by a phase-one simplex with Bland's rule.
pub fn nonnegative_solution(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> LinearOutcome {
    assert_eq!(rows.len(), rhs.len());
    let n = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut origin: Vec<usize> = (0..m.len()).collect();

    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        origin.swap(rank, p);
        let pivot = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &factor * p;
            }
        }
        rank += 1;
    }
    if let Some(r) = (rank..m.len()).find(|&r| !m[r][n].is_zero()) {
        return LinearOutcome::Inconsistent { row: origin[r] };
    }
    m.truncate(rank);
    phase_one(m, n)
}

fn phase_one(mut rows: Vec<Vec<BigRational>>, n: usize) -> LinearOutcome {
    let r = rows.len();
    let width = n + r;
    // tableau row: [coefficients | artificials | rhs], rhs made nonnegative
    let mut t: Vec<Vec<BigRational>> = rows
        .iter_mut()
        .enumerate()
        .map(|(k, row)| {
            let sign_flip = row[n].is_negative();
            let mut out = Vec::with_capacity(width + 1);
            for v in &row[..n] {
                out.push(if sign_flip { -v.clone() } else { v.clone() });
            }
            for a in 0..r {
                out.push(if a == k { BigRational::from_integer(1.into()) } else { BigRational::zero() });
            }
            out.push(if sign_flip { -row[n].clone() } else { row[n].clone() });
            out
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // reduced costs for minimizing the sum of artificials
    let mut cost: Vec<BigRational> = (0..=width)
        .map(|j| {
            if (n..width).contains(&j) {
                BigRational::zero()
            } else {
                -t.iter().map(|row| row[j].clone()).fold(BigRational::zero(), |a, b| a + b)
            }
        })
        .collect();

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (k, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width] / &row[enter];
            let better = match &leave {
                None => true,
                Some((lk, lr)) => ratio < *lr || (ratio == *lr && basis[k] < basis[*lk]),
            };
            if better {
                leave = Some((k, ratio));
            }
        }
        let Some((k, _)) = leave else {
            // unbounded direction cannot occur: the objective is bounded below by 0
            unreachable!("phase-one objective is bounded");
        };
        let pivot = t[k][enter].clone();
        for v in t[k].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_row = t[k].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == k || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &factor * p;
            }
        }
        let factor = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v = &*v - &factor * p;
        }
        basis[k] = enter;
    }

    // -cost[width] is the remaining sum of artificials
    if !cost[width].is_zero() {
        return LinearOutcome::Infeasible;
    }
    let mut x = vec![BigRational::zero(); n];
    for (k, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = t[k][width].clone();
        }
    }
    LinearOutcome::Feasible(x)
}
