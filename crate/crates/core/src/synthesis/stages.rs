use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::cyclotomic::{Factor, IntPoly, RationalForm};
use crate::error::{Error, Result};

/// Transfer function of one stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "lowercase")]
pub enum Transfer {
    Poly(IntPoly),
    Rational(RationalForm),
}

impl Transfer {
    pub fn numerator_poly(&self) -> IntPoly {
        match self {
            Transfer::Poly(p) => p.clone(),
            Transfer::Rational(r) => r.numerator_poly(),
        }
    }

    pub fn denominator_poly(&self) -> IntPoly {
        match self {
            Transfer::Poly(_) => IntPoly::one(),
            Transfer::Rational(r) => r.denominator_poly(),
        }
    }

    /// The impulse response when it is finite.
    pub fn as_poly(&self) -> Option<IntPoly> {
        match self {
            Transfer::Poly(p) => Some(p.clone()),
            Transfer::Rational(r) => r.expand().ok(),
        }
    }
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transfer::Poly(p) => write!(f, "{p}"),
            Transfer::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub transfer: Transfer,
    /// Decimation applied after the transfer (1 for none).
    pub decimate_by: u32,
    /// Input rate of this stage as a fraction `1 / input_rate_divisor` of
    /// the chain's input rate.
    pub input_rate_divisor: u32,
    /// Output register width; 0 until [`wordlength_plan`] fills it in.
    pub width_bits: u32,
}

/// A chain of filter stages with decimators in between.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageGraph {
    pub stages: Vec<Stage>,
}

impl StageGraph {
    /// Builds a chain from `(transfer, decimate_by)` pairs, deriving rates.
    pub fn from_transfers<I: IntoIterator<Item = (Transfer, u32)>>(items: I) -> Self {
        let mut divisor = 1u32;
        let stages = items
            .into_iter()
            .map(|(transfer, decimate_by)| {
                let s = Stage {
                    transfer,
                    decimate_by,
                    input_rate_divisor: divisor,
                    width_bits: 0,
                };
                divisor *= decimate_by;
                s
            })
            .collect();
        StageGraph { stages }
    }

    /// Single FIR stage followed by the full decimation.
    pub fn direct(h: IntPoly, decimation: u32) -> Self {
        Self::from_transfers([(Transfer::Poly(h), decimation)])
    }

    /// Recursive sections before the decimator, combs after it.
    pub fn recursive(pre: RationalForm, decimation: u32, post: RationalForm) -> Self {
        Self::from_transfers([(Transfer::Rational(pre), decimation), (Transfer::Rational(post), 1)])
    }

    pub fn total_decimation(&self) -> u32 {
        self.stages.iter().map(|s| s.decimate_by).product()
    }

    /// Equivalent single-rate impulse response `prod_r T_r(z^{div_r})`.
    pub fn composite(&self) -> Result<IntPoly> {
        let (mut num, mut den) = (IntPoly::one(), IntPoly::one());
        for s in &self.stages {
            let k = s.input_rate_divisor as usize;
            num = &num * &s.transfer.numerator_poly().substitute_power(k);
            den = &den * &s.transfer.denominator_poly().substitute_power(k);
        }
        num.div_exact(&den)
    }

    pub fn final_width(&self) -> u32 {
        self.stages.last().map_or(0, |s| s.width_bits)
    }

    pub fn to_json(&self, architecture: &str) -> ArchitectureJson {
        ArchitectureJson {
            architecture: architecture.to_string(),
            decimation: self.total_decimation(),
            stages: self
                .stages
                .iter()
                .map(|s| StageJson {
                    transfer: s.transfer.to_string(),
                    decimation: s.decimate_by,
                    input_rate_divisor: s.input_rate_divisor,
                    width_bits: s.width_bits,
                })
                .collect(),
        }
    }
}

/// Architecture description with transfers as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchitectureJson {
    pub architecture: String,
    pub decimation: u32,
    pub stages: Vec<StageJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageJson {
    pub transfer: String,
    pub decimation: u32,
    pub input_rate_divisor: u32,
    pub width_bits: u32,
}

/// Outcome of [`cascade_pow2_stages`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StagePlan {
    Stages { graph: StageGraph },
    NotApplicable { reason: String },
}

impl StagePlan {
    pub fn graph(self) -> Option<StageGraph> {
        match self {
            StagePlan::Stages { graph } => Some(graph),
            StagePlan::NotApplicable { .. } => None,
        }
    }
}

/// Rewrites a product of `C_{2^j} = 1 + z^{-2^(j-1)}` factors as a chain of
/// `(1 + z^-1)^t_r` stages separated by `÷2` decimators.
///
/// A factor with spacing `s < D` lands in stage `log2 s`; spacings of `D`
/// or more pass through every decimator and form a trailing stage
/// `(1 + z^{-s/D})`.
pub fn cascade_pow2_stages(cascade: &Cascade, decimation: u32) -> StagePlan {
    if decimation < 2 || !decimation.is_power_of_two() {
        return StagePlan::NotApplicable {
            reason: format!("decimation {decimation} is not a power of two"),
        };
    }
    let levels = decimation.trailing_zeros() as usize;
    let mut orders = vec![0u32; levels];
    let mut trailing = RationalForm::identity();
    for &(q, m) in cascade.terms() {
        let q = q.get();
        if q < 2 || !q.is_power_of_two() {
            return StagePlan::NotApplicable {
                reason: format!("C_{q} has no power-of-two spacing"),
            };
        }
        let spacing = q / 2;
        if spacing < decimation {
            orders[spacing.trailing_zeros() as usize] += m;
        } else {
            trailing.multiply_factor(Factor::BinomPlus(spacing / decimation), m as i32);
        }
    }
    let mut items: Vec<(Transfer, u32)> = orders
        .iter()
        .map(|&t| (Transfer::Poly(IntPoly::new(vec![1, 1]).pow(t)), 2))
        .collect();
    if !trailing.is_identity() {
        items.push((Transfer::Poly(trailing.numerator_poly()), 1));
    }
    StagePlan::Stages {
        graph: StageGraph::from_transfers(items),
    }
}

fn growth_bits(abs_sum: u128) -> u32 {
    if abs_sum <= 1 {
        0
    } else {
        128 - (abs_sum - 1).leading_zeros()
    }
}

/// Fills in register widths for input samples of `r_in` bits.
///
/// A stage with a finite impulse response grows the width by
/// `ceil(log2 sum |coeffs|)`. A stage with no finite expansion holds free
/// integrators; from there on every register gets the width the whole
/// chain needs (`r_in` plus the growth of the composite response) and
/// relies on wraparound arithmetic.
pub fn wordlength_plan(graph: &StageGraph, r_in: u32) -> Result<StageGraph> {
    if r_in == 0 {
        return Err(Error::Domain("input width must be at least 1 bit".into()));
    }
    let chain_width = r_in + growth_bits(graph.composite()?.abs_sum());
    let mut out = graph.clone();
    let mut width = r_in;
    let mut wrapping = false;
    for s in out.stages.iter_mut() {
        match s.transfer.as_poly() {
            Some(p) if !wrapping => width += growth_bits(p.abs_sum()),
            _ => {
                wrapping = true;
                width = width.max(chain_width);
            }
        }
        s.width_bits = width;
    }
    Ok(out)
}
