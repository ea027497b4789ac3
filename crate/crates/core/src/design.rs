//! End-to-end design flow and the JSON design file.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::catalog::Catalog;
use crate::cyclotomic::{CpIndex, MAX_INDEX};
use crate::eligibility::eligible_set;
use crate::error::{Error, Result};
use crate::optimizer::{build_problem, solve, Problem, ProblemOptions, Solution, Status};
use crate::spectrum::{attenuation_table, verify_spec, AttenuationTable, DesignSpec, VerifyReport};

/// Version of the design file layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecBlock {
    #[serde(rename = "D")]
    pub decimation: u32,
    pub nu: u32,
    #[serde(rename = "Rp_db")]
    pub ripple_db: f64,
    #[serde(rename = "As_db")]
    pub attenuation_db: f64,
    #[serde(default)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderEntry {
    pub q: u32,
    pub m: u32,
}

/// A solved (or proven infeasible) design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub version: u32,
    pub tool: String,
    pub spec: SpecBlock,
    pub orders: Vec<OrderEntry>,
    /// `sum m_q (N_a + gamma N_d)`.
    pub cost: f64,
    pub cost_adders: u64,
    pub cost_delays: u64,
    pub status: Status,
}

impl DesignFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: DesignFile = serde_json::from_str(text).map_err(|e| Error::DesignFile(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("design file serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::DesignFile(msg));
        if self.version != SCHEMA_VERSION {
            return bad(format!("schema version {} (expected {SCHEMA_VERSION})", self.version));
        }
        self.design_spec()?;
        if !(0.0..=1.0).contains(&self.spec.gamma) {
            return bad(format!("gamma {} outside [0, 1]", self.spec.gamma));
        }
        let mut seen = BTreeSet::new();
        for o in &self.orders {
            if !(2..=MAX_INDEX).contains(&o.q) {
                return bad(format!("order index {} outside 2..={MAX_INDEX}", o.q));
            }
            if o.m == 0 {
                return bad(format!("zero order for q = {}", o.q));
            }
            if !seen.insert(o.q) {
                return bad(format!("q = {} listed twice", o.q));
            }
        }
        if self.status == Status::Infeasible && !self.orders.is_empty() {
            return bad("an infeasible design lists orders".into());
        }
        Ok(())
    }

    pub fn design_spec(&self) -> Result<DesignSpec> {
        let s = &self.spec;
        DesignSpec::new(s.decimation, s.nu, s.ripple_db, s.attenuation_db)
    }

    pub fn cascade(&self) -> Cascade {
        Cascade::new(
            self.orders
                .iter()
                .map(|o| (CpIndex::new(o.q).expect("validated index"), o.m)),
        )
    }
}

/// Everything produced along the design flow.
#[derive(Debug, Clone)]
pub struct DesignOutcome {
    pub spec: DesignSpec,
    pub catalog: Catalog,
    pub eligible: Vec<CpIndex>,
    pub table: AttenuationTable,
    pub problem: Problem,
    pub solution: Solution,
    pub cascade: Cascade,
    /// Dense-grid check of the result (absent when infeasible).
    pub verify: Option<VerifyReport>,
}

impl DesignOutcome {
    pub fn to_file(&self) -> DesignFile {
        let (mut adders, mut delays) = (0u64, 0u64);
        for &(q, m) in self.cascade.terms() {
            let e = self.catalog.entry(q).expect("usable index");
            adders += m as u64 * e.adders as u64;
            delays += m as u64 * e.delays as u64;
        }
        DesignFile {
            version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_VERSION").to_string(),
            spec: SpecBlock {
                decimation: self.spec.decimation,
                nu: self.spec.residual,
                ripple_db: self.spec.ripple_db,
                attenuation_db: self.spec.attenuation_db,
                gamma: self.catalog.gamma,
            },
            orders: self
                .cascade
                .terms()
                .iter()
                .map(|&(q, m)| OrderEntry { q: q.get(), m })
                .collect(),
            cost: self.solution.cost,
            cost_adders: adders,
            cost_delays: delays,
            status: self.solution.status,
        }
    }
}

/// Eligibility, attenuation table, cost catalog, then the integer program.
pub fn run_design(spec: &DesignSpec, gamma: f64, opts: ProblemOptions) -> Result<DesignOutcome> {
    spec.validate()?;
    let catalog = Catalog::build(gamma)?;
    let eligible = eligible_set(spec);
    if eligible.is_empty() {
        return Err(Error::Spec("no eligible CPs for this specification".into()));
    }
    let table = attenuation_table(&eligible, spec)?;
    let problem = build_problem(spec, &eligible, &table, &catalog, opts)?;
    let solution = solve(&problem);
    let cascade = solution.cascade(&problem);
    let verify = (solution.status == Status::Optimal).then(|| verify_spec(&cascade, spec));
    Ok(DesignOutcome {
        spec: spec.clone(),
        catalog,
        eligible,
        table,
        problem,
        solution,
        cascade,
        verify,
    })
}
