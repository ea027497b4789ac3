//! Dense two-phase primal simplex with bounded variables.
//!
//! Small problems only (tens of rows, about a hundred columns). Pivoting
//! follows Bland's rule throughout, so degenerate problems cannot cycle.

/// Feasibility tolerance.
pub const FEAS_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
}

/// `min c.x` subject to `rows[i].x (sense) rhs[i]` and `lower <= x <= upper`
/// with finite bounds.
#[derive(Debug, Clone)]
pub struct Lp<'a> {
    pub cost: &'a [f64],
    pub rows: &'a [Vec<f64>],
    pub senses: &'a [Sense],
    pub rhs: &'a [f64],
    pub lower: &'a [f64],
    pub upper: &'a [f64],
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau {
    /// `B^-1 A`, one row per constraint.
    t: Vec<Vec<f64>>,
    /// Current value of the basic variable of each row.
    xb: Vec<f64>,
    basis: Vec<usize>,
    state: Vec<State>,
    /// Upper bounds of the shifted variables (lower bounds are all zero).
    ub: Vec<f64>,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn value(&self, j: usize) -> f64 {
        match self.state[j] {
            State::AtLower => 0.0,
            State::AtUpper => self.ub[j],
            State::Basic => {
                let r = self.basis.iter().position(|&b| b == j).expect("basic");
                self.xb[r]
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.t[r][j];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[j];
            if f != 0.0 {
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[j] = 0.0;
            }
        }
    }

    /// One Bland iteration for the objective `cost`.
    fn step(&mut self, cost: &[f64]) -> Step {
        let n = self.state.len();
        let m = self.basis.len();
        let mut entering = None;
        for j in 0..n {
            if self.state[j] == State::Basic || self.ub[j] <= FEAS_TOL {
                continue;
            }
            let d = cost[j] - (0..m).map(|i| cost[self.basis[i]] * self.t[i][j]).sum::<f64>();
            let improving = match self.state[j] {
                State::AtLower => d < -COST_TOL,
                State::AtUpper => d > COST_TOL,
                State::Basic => false,
            };
            if improving {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let dir = if self.state[j] == State::AtLower { 1.0 } else { -1.0 };

        // Ratio test; ties broken by smallest leaving variable index.
        let mut theta = self.ub[j];
        let mut leave: Option<(usize, State)> = None;
        for i in 0..m {
            let alpha = self.t[i][j] * dir;
            let (limit, to) = if alpha > PIVOT_TOL {
                (self.xb[i].max(0.0) / alpha, State::AtLower)
            } else if alpha < -PIVOT_TOL && self.ub[self.basis[i]].is_finite() {
                ((self.ub[self.basis[i]] - self.xb[i]).max(0.0) / -alpha, State::AtUpper)
            } else {
                continue;
            };
            // a tie with a pending bound flip keeps the flip
            let better = limit < theta - 1e-12
                || matches!(leave, Some((r, _)) if limit <= theta + 1e-12 && self.basis[i] < self.basis[r]);
            if better {
                theta = limit;
                leave = Some((i, to));
            }
        }
        if !theta.is_finite() {
            return Step::Unbounded;
        }
        for i in 0..m {
            self.xb[i] -= self.t[i][j] * dir * theta;
        }
        match leave {
            None => {
                self.state[j] = if dir > 0.0 { State::AtUpper } else { State::AtLower };
            }
            Some((r, to)) => {
                let entering_value = if dir > 0.0 { theta } else { self.ub[j] - theta };
                let out = self.basis[r];
                self.state[out] = to;
                self.pivot(r, j);
                self.basis[r] = j;
                self.state[j] = State::Basic;
                self.xb[r] = entering_value;
            }
        }
        Step::Moved
    }

    fn run(&mut self, cost: &[f64]) -> bool {
        loop {
            match self.step(cost) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Moved => {}
            }
        }
    }
}

pub fn solve_lp(lp: &Lp<'_>) -> LpOutcome {
    let n = lp.cost.len();
    let m = lp.rows.len();
    debug_assert!(lp.senses.len() == m && lp.rhs.len() == m);

    // Shift x = lower + y; residual right-hand side after the shift.
    let mut rhs: Vec<f64> = (0..m)
        .map(|i| lp.rhs[i] - lp.rows[i].iter().zip(lp.lower).map(|(a, l)| a * l).sum::<f64>())
        .collect();

    // Columns: n structural, m slack, then one artificial per row that needs it.
    let slack0 = n;
    let art0 = n + m;
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut needs_art = Vec::new();
    for i in 0..m {
        let mut row = vec![0.0; n + m];
        row[..n].copy_from_slice(&lp.rows[i]);
        row[slack0 + i] = if lp.senses[i] == Sense::Le { 1.0 } else { -1.0 };
        // rows are normalized so the right-hand side is non-negative
        if rhs[i] < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
            rhs[i] = -rhs[i];
        }
        if row[slack0 + i] > 0.0 {
            basis.push(slack0 + i);
        } else {
            basis.push(usize::MAX);
            needs_art.push(i);
        }
        t.push(row);
    }
    let total = art0 + needs_art.len();
    for row in t.iter_mut() {
        row.resize(total, 0.0);
    }
    for (k, &i) in needs_art.iter().enumerate() {
        t[i][art0 + k] = 1.0;
        basis[i] = art0 + k;
    }

    let mut ub = vec![f64::INFINITY; total];
    for (j, u) in ub.iter_mut().enumerate().take(n) {
        *u = lp.upper[j] - lp.lower[j];
        if *u < -FEAS_TOL {
            return LpOutcome::Infeasible;
        }
        *u = u.max(0.0);
    }
    let mut state = vec![State::AtLower; total];
    for &b in &basis {
        state[b] = State::Basic;
    }
    let mut tab = Tableau {
        t,
        xb: rhs,
        basis,
        state,
        ub,
    };

    if !needs_art.is_empty() {
        let mut phase1 = vec![0.0; total];
        phase1[art0..].iter_mut().for_each(|c| *c = 1.0);
        tab.run(&phase1);
        let infeas: f64 = (art0..total).map(|j| tab.value(j)).sum();
        let scale = 1.0 + lp.rhs.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if infeas > 1e-7 * scale {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        for r in 0..m {
            if tab.basis[r] < art0 {
                continue;
            }
            if let Some(j) = (0..art0).find(|&j| tab.state[j] != State::Basic && tab.t[r][j].abs() > 1e-7) {
                let out = tab.basis[r];
                let v = tab.value(j);
                tab.state[out] = State::AtLower;
                tab.pivot(r, j);
                tab.basis[r] = j;
                tab.state[j] = State::Basic;
                tab.xb[r] = v;
            }
        }
        for j in art0..total {
            tab.ub[j] = 0.0;
        }
    }

    let mut phase2 = vec![0.0; total];
    phase2[..n].copy_from_slice(lp.cost);
    if !tab.run(&phase2) {
        // cannot happen with finite structural bounds
        return LpOutcome::Infeasible;
    }
    let x: Vec<f64> = (0..n)
        .map(|j| (lp.lower[j] + tab.value(j)).clamp(lp.lower[j], lp.upper[j]))
        .collect();
    let objective = x.iter().zip(lp.cost).map(|(x, c)| x * c).sum();
    LpOutcome::Optimal { x, objective }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(cost: &[f64], rows: &[Vec<f64>], senses: &[Sense], rhs: &[f64], lower: &[f64], upper: &[f64]) -> LpOutcome {
        solve_lp(&Lp {
            cost,
            rows,
            senses,
            rhs,
            lower,
            upper,
        })
    }

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-7
    }

    #[test]
    fn covering_lp() {
        // min x + y, 2x + y >= 4, x + 3y >= 6, 0 <= x, y <= 10 -> (1.2, 1.6)
        let out = solve(
            &[1.0, 1.0],
            &[vec![2.0, 1.0], vec![1.0, 3.0]],
            &[Sense::Ge, Sense::Ge],
            &[4.0, 6.0],
            &[0.0, 0.0],
            &[10.0, 10.0],
        );
        let LpOutcome::Optimal { x, objective } = out else { panic!("infeasible") };
        assert!(approx(x[0], 1.2) && approx(x[1], 1.6), "{x:?}");
        assert!(approx(objective, 2.8));
    }

    #[test]
    fn upper_bounds_bind() {
        // min -x - 2y, x + y <= 3, x, y in [0, 2] -> (1, 2)
        let out = solve(&[-1.0, -2.0], &[vec![1.0, 1.0]], &[Sense::Le], &[3.0], &[0.0, 0.0], &[2.0, 2.0]);
        let LpOutcome::Optimal { x, objective } = out else { panic!() };
        assert!(approx(x[0], 1.0) && approx(x[1], 2.0));
        assert!(approx(objective, -5.0));
    }

    #[test]
    fn shifted_lower_bounds() {
        let out = solve(&[1.0], &[vec![1.0]], &[Sense::Ge], &[0.5], &[2.0], &[5.0]);
        let LpOutcome::Optimal { x, .. } = out else { panic!() };
        assert!(approx(x[0], 2.0));
    }

    #[test]
    fn detects_infeasibility() {
        let out = solve(&[1.0], &[vec![1.0]], &[Sense::Ge], &[3.0], &[0.0], &[2.0]);
        assert_eq!(out, LpOutcome::Infeasible);
        let out = solve(&[1.0], &[], &[], &[], &[3.0], &[2.0]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn degenerate_rows() {
        // duplicated constraints and a redundant zero row
        let rows = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![0.0, 0.0]];
        let out = solve(
            &[1.0, 2.0],
            &rows,
            &[Sense::Ge, Sense::Ge, Sense::Ge],
            &[1.0, 1.0, 0.0],
            &[0.0, 0.0],
            &[4.0, 4.0],
        );
        let LpOutcome::Optimal { x, objective } = out else { panic!() };
        assert!(approx(objective, 1.0), "{x:?}");
    }
}
