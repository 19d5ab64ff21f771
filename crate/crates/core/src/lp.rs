//! A small exact linear program solver.
//!
//! Solves `minimize c·x subject to A x >= b, x >= 0` with nonnegative costs
//! by the dual simplex method on a compact tableau over `BigRational`. With
//! `c >= 0` the slack basis is dual feasible from the start, so no phase one
//! is needed. Bland's rule picks every pivot, which rules out cycling.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Outcome of [`minimize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<BigRational>,
        value: BigRational,
    },
    Infeasible,
}

impl LpOutcome {
    pub fn solution(&self) -> Option<&[BigRational]> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            LpOutcome::Infeasible => None,
        }
    }
}

/// `minimize c·x` over `{x >= 0 : A x >= b}`; every `c[j]` must be `>= 0`.
pub fn minimize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let cols = c.len();
    let rows = a.len();
    assert_eq!(b.len(), rows);
    assert!(c.iter().all(|v| !v.is_negative()), "costs must be nonnegative");
    assert!(a.iter().all(|r| r.len() == cols));

    // Row r encodes  s_r = -b_r + sum_j (A_rj) x_j  >= 0, rewritten as
    // basic = rhs + sum_j t[r][j] * nonbasic_j with rhs = -b_r, t = A.
    // Variables 0..cols are structural, cols..cols+rows are slacks.
    let mut t: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<BigRational> = b.iter().map(|v| -v).collect();
    let mut cost: Vec<BigRational> = c.to_vec();
    let mut obj = BigRational::zero();
    let mut basic: Vec<usize> = (cols..cols + rows).collect();
    let mut nonbasic: Vec<usize> = (0..cols).collect();

    loop {
        // Leaving row: infeasible basic variable with the smallest index.
        let leave = (0..rows)
            .filter(|&r| rhs[r].is_negative())
            .min_by_key(|&r| basic[r]);
        let Some(r) = leave else {
            let mut x = vec![BigRational::zero(); cols];
            for (row, &var) in basic.iter().enumerate() {
                if var < cols {
                    x[var] = rhs[row].clone();
                }
            }
            return LpOutcome::Optimal { x, value: obj };
        };
        // Entering column: positive coefficient (increasing it raises the
        // basic variable), minimizing cost / coefficient, ties by index.
        let mut enter: Option<(usize, BigRational)> = None;
        for j in 0..cols {
            if t[r][j].is_positive() {
                let ratio = &cost[j] / &t[r][j];
                let better = match &enter {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && nonbasic[j] < nonbasic[*k])
                    }
                };
                if better {
                    enter = Some((j, ratio));
                }
            }
        }
        let Some((s, _)) = enter else {
            return LpOutcome::Infeasible;
        };
        pivot(&mut t, &mut rhs, &mut cost, &mut obj, r, s);
        std::mem::swap(&mut basic[r], &mut nonbasic[s]);
    }
}

/// Exchange basic row `r` with nonbasic column `s`.
fn pivot(
    t: &mut [Vec<BigRational>],
    rhs: &mut [BigRational],
    cost: &mut [BigRational],
    obj: &mut BigRational,
    r: usize,
    s: usize,
) {
    let p = t[r][s].clone();
    // Solve row r for the entering variable:
    // x_s = (basic_r - rhs_r - sum_{j != s} t_rj x_j) / p
    let mut new_row: Vec<BigRational> = t[r].iter().map(|v| -v / &p).collect();
    new_row[s] = p.recip();
    let new_rhs = -&rhs[r] / &p;
    for (i, row) in t.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[s].clone();
        if f.is_zero() {
            continue;
        }
        for (j, v) in row.iter_mut().enumerate() {
            if j == s {
                *v = &f * &new_row[s];
            } else {
                *v += &f * &new_row[j];
            }
        }
        rhs[i] += &f * &new_rhs;
    }
    // objective = obj + sum cost_j x_j, substitute x_s
    let f = cost[s].clone();
    if !f.is_zero() {
        for (j, v) in cost.iter_mut().enumerate() {
            if j == s {
                *v = &f * &new_row[s];
            } else {
                *v += &f * &new_row[j];
            }
        }
        *obj += &f * &new_rhs;
    }
    t[r] = new_row;
    rhs[r] = new_rhs;
}

/// Whether `{x >= 0 : A x >= b}` is nonempty; returns a witness.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let c = vec![BigRational::zero(); cols];
    match minimize(&c, a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible => None,
    }
}
