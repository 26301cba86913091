//! Dense two-phase simplex for the tiny linear programs that appear in
//! face-distance subproblems (a handful of variables and rows). Bland's rule
//! keeps the pivoting cycle-free and deterministic.

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 20_000;

/// `min objective . x` subject to `eq` equalities, `le` inequalities and
/// `x >= 0` componentwise.
#[derive(Debug, Clone, Default)]
pub(crate) struct LinearProgram {
    pub objective: Vec<f64>,
    pub eq: Vec<(Vec<f64>, f64)>,
    pub le: Vec<(Vec<f64>, f64)>,
}

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
}

impl LpSolution {
    #[cfg(test)]
    pub fn objective_value(&self, c: &[f64]) -> f64 {
        c.iter().zip(&self.x).map(|(ci, xi)| ci * xi).sum()
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>, // m x (n_cols + 1), last column = rhs
    basis: Vec<usize>,
    n_cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let scale = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= scale;
        }
        let pivot_row = self.rows[row].clone();
        for (r, row_data) in self.rows.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = row_data[col];
            if factor.abs() > 0.0 {
                for (v, p) in row_data.iter_mut().zip(pivot_row.iter()) {
                    *v -= factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule minimization over the columns enabled by `active`.
    /// Returns false when the problem is unbounded or the pivot cap is hit.
    fn minimize(&mut self, cost: &[f64], active: &[bool]) -> bool {
        for _ in 0..MAX_PIVOTS {
            // Reduced costs: c_j - c_B . B^{-1} A_j, computed from the tableau.
            let mut entering = None;
            for j in 0..self.n_cols {
                if !active[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j];
                for (r, &b) in self.basis.iter().enumerate() {
                    reduced -= cost[b] * self.rows[r][j];
                }
                if reduced < -COST_TOL {
                    entering = Some(j);
                    break; // smallest index first
                }
            }
            let Some(col) = entering else { return true };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][col];
                if a > PIVOT_TOL {
                    let ratio = self.rows[r][self.n_cols] / a;
                    let better = match leaving {
                        None => true,
                        Some((lr, lv)) => {
                            ratio < lv - PIVOT_TOL
                                || (ratio < lv + PIVOT_TOL && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else { return false };
            self.pivot(row, col);
        }
        false
    }
}

pub(crate) fn solve(lp: &LinearProgram) -> Option<LpSolution> {
    let n = lp.objective.len();
    let n_le = lp.le.len();
    let m = lp.eq.len() + n_le;
    if m == 0 {
        return Some(LpSolution { x: vec![0.0; n] });
    }
    let n_struct = n + n_le; // structural + slack
    let n_cols = n_struct + m; // + artificials

    let mut rows = Vec::with_capacity(m);
    let mut fill_row = |a: &[f64], b: f64, slack: Option<usize>, art: usize| {
        let mut row = vec![0.0; n_cols + 1];
        row[..n].copy_from_slice(a);
        if let Some(s) = slack {
            row[n + s] = 1.0;
        }
        row[n_cols] = b;
        if b < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        row[n_struct + art] = 1.0;
        rows.push(row);
    };
    for (i, (a, b)) in lp.eq.iter().enumerate() {
        fill_row(a, *b, None, i);
    }
    for (i, (a, b)) in lp.le.iter().enumerate() {
        fill_row(a, *b, Some(i), lp.eq.len() + i);
    }

    let mut tab = Tableau { rows, basis: (n_struct..n_cols).collect(), n_cols };

    // Phase 1: drive the artificials to zero.
    let mut phase1_cost = vec![0.0; n_cols];
    for c in phase1_cost.iter_mut().skip(n_struct) {
        *c = 1.0;
    }
    let all_active = vec![true; n_cols];
    if !tab.minimize(&phase1_cost, &all_active) {
        return None;
    }
    let infeasibility: f64 =
        tab.basis.iter().enumerate().filter(|(_, &b)| b >= n_struct).map(|(r, _)| tab.rows[r][n_cols]).sum();
    if infeasibility > 1e-8 {
        return None;
    }
    // Pivot residual artificials out of the basis where possible.
    for r in 0..tab.rows.len() {
        if tab.basis[r] >= n_struct {
            if let Some(col) = (0..n_struct).find(|&j| tab.rows[r][j].abs() > PIVOT_TOL) {
                tab.pivot(r, col);
            }
        }
    }

    // Phase 2 over structural + slack columns only.
    let mut cost = vec![0.0; n_cols];
    cost[..n].copy_from_slice(&lp.objective);
    let mut active = vec![true; n_cols];
    for a in active.iter_mut().skip(n_struct) {
        *a = false;
    }
    if !tab.minimize(&cost, &active) {
        return None;
    }

    let mut x = vec![0.0; n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rows[r][tab.n_cols];
        }
    }
    Some(LpSolution { x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_box_max() {
        // min -x1 - x2 subject to x1 + x2 <= 1
        let lp = LinearProgram {
            objective: vec![-1.0, -1.0],
            eq: vec![],
            le: vec![(vec![1.0, 1.0], 1.0)],
        };
        let sol = solve(&lp).unwrap();
        assert!((sol.objective_value(&lp.objective) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn equality_pin() {
        let lp = LinearProgram { objective: vec![1.0], eq: vec![(vec![1.0], 0.5)], le: vec![] };
        let sol = solve(&lp).unwrap();
        assert!((sol.x[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn infeasible_detected() {
        // x <= -1 with x >= 0 is infeasible.
        let lp = LinearProgram { objective: vec![1.0], eq: vec![], le: vec![(vec![1.0], -1.0)] };
        assert!(solve(&lp).is_none());
    }

    #[test]
    fn chebyshev_center_of_pair() {
        // min t s.t. |0.3 - l1| <= t, l1 + l2 = 1, l >= 0 ; optimum l1 = 0.3, t = 0.
        // Variables: l1, l2, t.
        let lp = LinearProgram {
            objective: vec![0.0, 0.0, 1.0],
            eq: vec![(vec![1.0, 1.0, 0.0], 1.0)],
            le: vec![(vec![-1.0, 0.0, -1.0], -0.3), (vec![1.0, 0.0, -1.0], 0.3)],
        };
        let sol = solve(&lp).unwrap();
        let value = sol.objective_value(&lp.objective);
        assert!(value.abs() < 1e-9, "value = {value}");
        assert!((sol.x[0] - 0.3).abs() < 1e-9);
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Multiple redundant constraints through the optimum.
        let lp = LinearProgram {
            objective: vec![-1.0, 0.0],
            eq: vec![],
            le: vec![
                (vec![1.0, 0.0], 1.0),
                (vec![1.0, 1.0], 1.0),
                (vec![1.0, -1.0], 1.0),
                (vec![2.0, 0.0], 2.0),
            ],
        };
        let sol = solve(&lp).unwrap();
        assert!((sol.objective_value(&lp.objective) + 1.0).abs() < 1e-9);
    }
}
