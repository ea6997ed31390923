//! Phase-I simplex over exact rationals with Bland's anti-cycling rule.

use crate::rational::Rational;

/// Finds `x >= 0` with `A x = b`, or `None` if no such point exists.
///
/// `a` is row-major with every row of equal length. The returned point is a
/// basic solution (a vertex of the feasible polyhedron).
pub fn find_feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint matrix");

    // Columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let rhs = n + m;
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, &bi))| {
            let flip = bi.is_negative();
            let mut t = vec![Rational::ZERO; width];
            for (j, &v) in row.iter().enumerate() {
                t[j] = if flip { -v } else { v };
            }
            t[n + i] = Rational::ONE;
            t[rhs] = if flip { -bi } else { bi };
            t
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the auxiliary objective (sum of artificials).
    let mut cost = vec![Rational::ZERO; width];
    for row in &rows {
        for j in 0..n {
            cost[j] = cost[j] - row[j];
        }
        cost[rhs] = cost[rhs] - row[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            let pivot = row[enter];
            if pivot > 0 {
                let ratio = row[rhs] / pivot;
                let better = match leave {
                    None => true,
                    Some((k, best)) => ratio < best || (ratio == best && basis[i] < basis[k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // The auxiliary objective is bounded below by 0.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot_on(&mut rows, &mut cost, r, enter);
        basis[r] = enter;
    }

    // cost[rhs] holds minus the optimal sum of artificials.
    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::ZERO; n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rows[i][rhs];
        }
    }
    Some(x)
}

fn pivot_on(rows: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, col: usize) {
    let p = rows[r][col];
    for v in rows[r].iter_mut() {
        *v = *v / p;
    }
    let pivot_row = rows[r].clone();
    let eliminate = |row: &mut Vec<Rational>| {
        let factor = row[col];
        if !factor.is_zero() {
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = *v - factor * pv;
            }
        }
    };
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut c = cost.to_vec();
    eliminate(&mut c);
    cost.copy_from_slice(&c);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let lhs: Rational = row.iter().zip(x).map(|(&p, &v)| p * v).sum();
            assert_eq!(lhs, *bi);
        }
    }

    #[test]
    fn simple_feasible_system() {
        // x + y = 2, x - y = 0  ->  (1, 1)
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(2), q(0)];
        let x = find_feasible_point(&a, &b).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
    }

    #[test]
    fn negative_rhs_is_handled() {
        // -x - y = -3, x = 1
        let a = vec![vec![q(-1), q(-1)], vec![q(1), q(0)]];
        let b = vec![q(-3), q(1)];
        let x = find_feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn infeasible_sign_constraint() {
        // x + y = -1 with x, y >= 0
        let a = vec![vec![q(1), q(1)]];
        assert!(find_feasible_point(&a, &[q(-1)]).is_none());
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![q(1), q(1), q(1)], vec![q(2), q(2), q(2)], vec![q(1), q(0), q(0)]];
        let b = vec![q(1), q(2), Rational::HALF];
        let x = find_feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn inconsistent_rows() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(find_feasible_point(&a, &[q(1), q(2)]).is_none());
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic degenerate setup: many constraints active at the origin.
        let a = vec![
            vec![q(1), q(-1), q(0), q(1), q(0), q(0)],
            vec![q(0), q(1), q(-1), q(0), q(1), q(0)],
            vec![q(-1), q(0), q(1), q(0), q(0), q(1)],
        ];
        let b = vec![q(0), q(0), q(0)];
        let x = find_feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }
}
