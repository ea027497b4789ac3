//! Integer program selecting CP orders, solved by branch-and-bound over
//! LP relaxations.
//!
//! The program is
//!
//! ```text
//! minimize   sum_q c_q m_q
//! subject to sum_q dev_q m_q   <= Rp
//!            sum_q att_kq m_q  >= As      for every folding band k
//!            0 <= m_q <= u_q,  m_q integer
//! ```
//!
//! Among equal-cost optima the lexicographically smallest order vector
//! (indices ascending) is returned, so results are reproducible.

mod simplex;

use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::catalog::Catalog;
use crate::cyclotomic::CpIndex;
use crate::error::{Error, Result};
use crate::spectrum::{AttenuationTable, DesignSpec};

pub use simplex::{solve_lp, Lp, LpOutcome, Sense};

/// Tolerance used when checking a candidate order vector against the rows.
pub const CONSTRAINT_TOL: f64 = 1e-6;
const INTEGRALITY_TOL: f64 = 1e-6;

/// Knobs for [`build_problem`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemOptions {
    /// Upper bound for a CP with no passband deviation at all.
    pub zero_dev_cap: u32,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions { zero_dev_cap: 16 }
    }
}

/// `A m (<=, >=) b` with row 0 the passband row and rows `1..` the bands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub indices: Vec<CpIndex>,
    pub cost: Vec<f64>,
    /// Row 0 is `dev` (may hold `+inf`), rows `1..=k_M` are attenuations.
    pub a: Vec<Vec<f64>>,
    /// `b[0] = Rp`, `b[k] = As`.
    pub b: Vec<f64>,
    pub upper: Vec<u32>,
}

impl Problem {
    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn vars(&self) -> usize {
        self.indices.len()
    }

    /// Whether `m` satisfies every row and bound within [`CONSTRAINT_TOL`].
    pub fn is_feasible(&self, m: &[u32]) -> bool {
        if m.len() != self.vars() || m.iter().zip(&self.upper).any(|(x, u)| x > u) {
            return false;
        }
        (0..self.rows()).all(|i| {
            let lhs = self.row_value(i, m);
            if i == 0 {
                lhs <= self.b[0] + CONSTRAINT_TOL
            } else {
                lhs >= self.b[i] - CONSTRAINT_TOL
            }
        })
    }

    /// `sum_j a[i][j] m_j`, skipping unused columns (so `inf * 0` is 0).
    pub fn row_value(&self, i: usize, m: &[u32]) -> f64 {
        self.a[i]
            .iter()
            .zip(m)
            .filter(|(_, &x)| x > 0)
            .map(|(a, &x)| a * x as f64)
            .sum()
    }

    pub fn objective(&self, m: &[u32]) -> f64 {
        self.cost.iter().zip(m).map(|(c, &x)| c * x as f64).sum()
    }

    /// Summed shortfall against the attenuation rows.
    fn deficit(&self, m: &[u32]) -> f64 {
        (1..self.rows())
            .map(|i| (self.b[i] - self.row_value(i, m)).max(0.0))
            .sum()
    }
}

/// Assembles the program for the CPs in `indices`.
///
/// The bound is `u_q = floor(Rp / dev_q)`: 0 when a zero sits in the
/// passband and `opts.zero_dev_cap` when `dev_q = 0`.
pub fn build_problem(
    spec: &DesignSpec,
    indices: &[CpIndex],
    table: &AttenuationTable,
    catalog: &Catalog,
    opts: ProblemOptions,
) -> Result<Problem> {
    if indices.is_empty() {
        return Err(Error::Spec("no eligible CPs to choose from".into()));
    }
    let mut cost = Vec::with_capacity(indices.len());
    let mut dev = Vec::with_capacity(indices.len());
    let mut upper = Vec::with_capacity(indices.len());
    let mut att = vec![Vec::with_capacity(indices.len()); table.band_count()];
    for &q in indices {
        let entry = catalog
            .entry(q)
            .ok_or_else(|| Error::Domain(format!("no cost entry for C_{q}")))?;
        let d = table
            .dev_of(q)
            .ok_or_else(|| Error::Spec(format!("C_{q} missing from the attenuation table")))?;
        cost.push(entry.cost(catalog.gamma));
        dev.push(d);
        upper.push(if d.is_infinite() {
            0
        } else if d <= 0.0 {
            opts.zero_dev_cap
        } else {
            (spec.ripple_db / d).floor().min(u32::MAX as f64) as u32
        });
        for (k, row) in att.iter_mut().enumerate() {
            row.push(table.att_of(k + 1, q).expect("present"));
        }
    }
    let mut a = vec![dev];
    a.extend(att);
    let mut b = vec![spec.ripple_db];
    b.extend(std::iter::repeat_n(spec.attenuation_db, table.band_count()));
    Ok(Problem {
        indices: indices.to_vec(),
        cost,
        a,
        b,
        upper,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Orders aligned with [`Problem::indices`]; all zero when infeasible.
    pub m: Vec<u32>,
    pub cost: f64,
    pub status: Status,
    /// LP relaxation value at the root (`+inf` when it is infeasible).
    pub root_bound: f64,
    pub node_count: u64,
}

impl Solution {
    pub fn cascade(&self, problem: &Problem) -> Cascade {
        Cascade::from_orders(&problem.indices, &self.m)
    }
}

/// Feasible orders built by repeatedly adding the CP that removes the most
/// attenuation shortfall per unit cost without breaking the ripple row.
pub fn greedy_incumbent(p: &Problem) -> Option<Vec<u32>> {
    let mut m = vec![0u32; p.vars()];
    loop {
        let deficit = p.deficit(&m);
        if deficit <= CONSTRAINT_TOL {
            return p.is_feasible(&m).then_some(m);
        }
        let mut best: Option<(usize, f64)> = None;
        for j in 0..p.vars() {
            if m[j] >= p.upper[j] {
                continue;
            }
            m[j] += 1;
            let ripple_ok = p.row_value(0, &m) <= p.b[0] + CONSTRAINT_TOL;
            let gain = deficit - p.deficit(&m);
            m[j] -= 1;
            if !ripple_ok || gain <= CONSTRAINT_TOL {
                continue;
            }
            let score = if p.cost[j] > 0.0 { gain / p.cost[j] } else { f64::INFINITY };
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((j, score));
            }
        }
        let (j, _) = best?;
        m[j] += 1;
    }
}

struct Node {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

/// Exact integer optimum by depth-first branch-and-bound.
///
/// Branching picks the most fractional variable (lowest index on ties) and
/// explores the rounded-down child first. A node is pruned when its bound
/// exceeds the incumbent, or when it ties and cannot hold a
/// lexicographically smaller vector.
pub fn solve(p: &Problem) -> Solution {
    let n = p.vars();
    let integral_costs = p.cost.iter().all(|c| (c - c.round()).abs() < 1e-9);
    // infinite deviations only occur on columns fixed at zero
    let rows: Vec<Vec<f64>> = p
        .a
        .iter()
        .map(|r| r.iter().zip(&p.upper).map(|(&a, &u)| if u == 0 { 0.0 } else { a }).collect())
        .collect();
    let senses: Vec<Sense> = (0..p.rows()).map(|i| if i == 0 { Sense::Le } else { Sense::Ge }).collect();

    let mut best: Option<(f64, Vec<u32>)> = greedy_incumbent(p).map(|m| (p.objective(&m), m));
    let mut node_count = 0u64;
    let mut root_bound = f64::INFINITY;
    let mut stack = vec![Node {
        lower: vec![0.0; n],
        upper: p.upper.iter().map(|&u| u as f64).collect(),
    }];

    while let Some(node) = stack.pop() {
        node_count += 1;
        let out = solve_lp(&Lp {
            cost: &p.cost,
            rows: &rows,
            senses: &senses,
            rhs: &p.b,
            lower: &node.lower,
            upper: &node.upper,
        });
        let LpOutcome::Optimal { x, objective } = out else {
            continue;
        };
        if node_count == 1 {
            root_bound = objective;
        }
        let bound = if integral_costs {
            (objective - INTEGRALITY_TOL).ceil()
        } else {
            objective
        };
        if let Some((best_cost, best_m)) = &best {
            if bound > best_cost + 1e-9 {
                continue;
            }
            // every vector in the subtree dominates `lower` componentwise
            let lower_m: Vec<u32> = node.lower.iter().map(|&l| l as u32).collect();
            if bound >= best_cost - 1e-9 && lower_m >= *best_m {
                continue;
            }
        }

        let branch = x
            .iter()
            .enumerate()
            .map(|(j, &v)| (j, v - v.floor()))
            .filter(|&(_, f)| f > INTEGRALITY_TOL && f < 1.0 - INTEGRALITY_TOL)
            .min_by(|a, b| {
                let da = (a.1 - 0.5).abs();
                let db = (b.1 - 0.5).abs();
                da.partial_cmp(&db).expect("finite").then(a.0.cmp(&b.0))
            });
        match branch {
            None => {
                let m: Vec<u32> = x.iter().map(|v| v.round() as u32).collect();
                if !p.is_feasible(&m) {
                    continue;
                }
                let c = p.objective(&m);
                let better = match &best {
                    None => true,
                    Some((bc, bm)) => c < bc - 1e-9 || (c <= bc + 1e-9 && m < *bm),
                };
                if better {
                    best = Some((c, m));
                }
            }
            Some((j, _)) => {
                let v = x[j];
                let mut up = Node {
                    lower: node.lower.clone(),
                    upper: node.upper.clone(),
                };
                up.lower[j] = v.ceil();
                let mut down = node;
                down.upper[j] = v.floor();
                stack.push(up);
                stack.push(down);
            }
        }
    }

    match best {
        Some((cost, m)) => {
            debug_assert!(root_bound <= cost + 1e-6, "relaxation above integer optimum");
            Solution {
                m,
                cost,
                status: Status::Optimal,
                root_bound,
                node_count,
            }
        }
        None => Solution {
            m: vec![0; n],
            cost: 0.0,
            status: Status::Infeasible,
            root_bound,
            node_count,
        },
    }
}
