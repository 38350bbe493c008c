//! Exact feasibility for `{x ≥ 0 : A x = b}` by the two-phase simplex
//! method's first phase, using Bland's rule so it cannot cycle.

use super::{Rational, Vector};

/// Returns a nonnegative solution of `rows · x = rhs`, or `None` if there is
/// none. Every row must have the same length.
pub fn feasible_point(rows: &[Vector], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let m = rows.len();
    let n = rows.first().map(Vector::dim).unwrap_or(0);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }

    // Columns: n structural, then m artificial; last column is the rhs.
    let width = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let flip = b.is_negative();
        let mut line: Vec<Rational> = row
            .coords()
            .iter()
            .map(|c| if flip { -c } else { c.clone() })
            .collect();
        line.extend((0..m).map(|j| if j == i { Rational::one() } else { Rational::zero() }));
        line.push(if flip { -b } else { b.clone() });
        tab.push(line);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of `minimize Σ artificials`.
    let mut cost: Vec<Rational> = vec![Rational::zero(); width + 1];
    for line in &tab {
        for j in 0..n {
            cost[j] -= &line[j];
        }
        cost[width] -= &line[width];
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, line) in tab.iter().enumerate() {
            if !line[enter].is_positive() {
                continue;
            }
            let ratio = &line[width] / &line[enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i][width].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = tab[row][col].recip();
    for v in tab[row].iter_mut() {
        *v = &*v * &inv;
    }
    let pivot_row = tab[row].clone();
    for (i, line) in tab.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let factor = line[col].clone();
        for (v, p) in line.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &(&factor * p);
            }
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &(&factor * p);
            }
        }
    }
}

/// Whether the origin lies in the convex hull of `points` (all of one
/// dimension, possibly zero).
pub fn origin_in_convex_hull(points: &[Vector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = points[0].dim();
    let mut rows: Vec<Vector> = (0..dim)
        .map(|axis| Vector::new(points.iter().map(|p| p[axis].clone()).collect()))
        .collect();
    rows.push(Vector::new(vec![Rational::one(); points.len()]));
    let mut rhs = vec![Rational::zero(); dim];
    rhs.push(Rational::one());
    feasible_point(&rows, &rhs).is_some()
}

/// Whether `{x : normals[j]·x < offsets[j] for all j}` is nonempty, decided
/// through the transposition theorem: the strict system is infeasible iff
/// some `λ ≥ 0`, `λ ≠ 0` has `Σ λ_j normals[j] = 0` and `Σ λ_j offsets[j] ≤ 0`.
pub fn strict_system_feasible(normals: &[Vector], offsets: &[Rational]) -> bool {
    let Some(dim) = normals.first().map(Vector::dim) else {
        return true;
    };
    let count = normals.len();
    // Unknowns: λ_1..λ_count, then one slack σ for Σ λ_j b_j + σ = 0.
    let mut rows = Vec::with_capacity(dim + 2);
    for axis in 0..dim {
        let mut row: Vec<Rational> = normals.iter().map(|n| n[axis].clone()).collect();
        row.push(Rational::zero());
        rows.push(Vector::new(row));
    }
    let mut offset_row: Vec<Rational> = offsets.to_vec();
    offset_row.push(Rational::one());
    rows.push(Vector::new(offset_row));
    let mut normalise: Vec<Rational> = vec![Rational::one(); count];
    normalise.push(Rational::zero());
    rows.push(Vector::new(normalise));
    let mut rhs = vec![Rational::zero(); dim + 1];
    rhs.push(Rational::one());
    feasible_point(&rows, &rhs).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn simple_feasibility() {
        // x + y = 1, x - y = 0  →  x = y = 1/2
        let x = feasible_point(&[v(&[1, 1]), v(&[1, -1])], &[Rational::one(), Rational::zero()])
            .unwrap();
        assert_eq!(x, vec![Rational::new(1, 2), Rational::new(1, 2)]);
        // x + y = -1 has no nonnegative solution
        assert!(feasible_point(&[v(&[1, 1])], &[Rational::from_int(-1)]).is_none());
    }

    #[test]
    fn origin_membership() {
        assert!(origin_in_convex_hull(&[v(&[1, 0]), v(&[-1, 1]), v(&[-1, -1])]));
        assert!(!origin_in_convex_hull(&[v(&[1, 0]), v(&[2, 1]), v(&[1, -1])]));
        // origin on an edge counts as inside
        assert!(origin_in_convex_hull(&[v(&[1, 0]), v(&[-1, 0]), v(&[0, 5])]));
        assert!(origin_in_convex_hull(&[v(&[0, 0])]));
    }

    #[test]
    fn strict_systems() {
        // 0 < x < 1
        assert!(strict_system_feasible(
            &[v(&[1]), v(&[-1])],
            &[Rational::one(), Rational::zero()]
        ));
        // x < 0 and x > 0
        assert!(!strict_system_feasible(
            &[v(&[1]), v(&[-1])],
            &[Rational::zero(), Rational::zero()]
        ));
    }
}
