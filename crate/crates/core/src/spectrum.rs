//! Frequency-domain side of the design: stage specifications, folding
//! bands, normalized magnitude responses and per-CP attenuation tables.
//!
//! Frequencies are normalized to the stage input rate (cycles/sample).
//! Band and cutoff positions are exact rationals so that zero placement can
//! be compared without rounding; magnitudes are evaluated in `f64`.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::cyclotomic::{cyclotomic_poly, dc_gain, CpIndex, IntPoly};
use crate::eligibility::zero_set;
use crate::error::{Error, Result};

/// Exact normalized frequency.
pub type Freq = Ratio<i64>;

/// Default number of evaluation points per band.
pub const DEFAULT_GRID: usize = 1024;

/// Minimum number of evaluation points per band.
pub const MIN_GRID: usize = 64;

/// Tolerance (dB) used when checking a design against its mask.
pub const VERIFY_TOLERANCE_DB: f64 = 0.01;

/// Requirements for one decimation stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSpec {
    /// Decimation factor of this stage.
    pub decimation: u32,
    /// Decimation left for the stages that follow.
    pub residual: u32,
    /// Signal cutoff at the stage input.
    pub cutoff: Freq,
    /// Passband ripple budget in dB.
    pub ripple_db: f64,
    /// Required attenuation in every folding band, dB (positive).
    pub attenuation_db: f64,
    /// Evaluation points per band.
    pub grid: usize,
}

impl DesignSpec {
    /// First-stage spec: the cutoff is `1 / (2 D nu)`.
    pub fn new(decimation: u32, residual: u32, ripple_db: f64, attenuation_db: f64) -> Result<Self> {
        if decimation == 0 || residual == 0 {
            return Err(Error::Spec("decimation and residual factors must be positive".into()));
        }
        let cutoff = Freq::new(1, 2 * decimation as i64 * residual as i64);
        Self::with_cutoff(decimation, residual, cutoff, ripple_db, attenuation_db)
    }

    pub fn with_cutoff(
        decimation: u32,
        residual: u32,
        cutoff: Freq,
        ripple_db: f64,
        attenuation_db: f64,
    ) -> Result<Self> {
        let spec = DesignSpec {
            decimation,
            residual,
            cutoff,
            ripple_db,
            attenuation_db,
            grid: DEFAULT_GRID,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_grid(mut self, grid: usize) -> Result<Self> {
        self.grid = grid;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.decimation < 2 {
            return Err(Error::Spec(format!("decimation factor {} < 2", self.decimation)));
        }
        if self.residual < 1 {
            return Err(Error::Spec("residual decimation must be >= 1".into()));
        }
        let limit = Freq::new(1, 2 * self.decimation as i64);
        if self.cutoff <= Freq::zero() || self.cutoff >= limit {
            return Err(Error::Spec(format!(
                "cutoff {} must lie strictly inside (0, {}) so folding bands clear the passband",
                self.cutoff, limit
            )));
        }
        if !(self.ripple_db.is_finite() && self.ripple_db > 0.0) {
            return Err(Error::Spec(format!("ripple {} dB must be positive", self.ripple_db)));
        }
        if !(self.attenuation_db.is_finite() && self.attenuation_db >= 0.0) {
            return Err(Error::Spec(format!(
                "attenuation {} dB must be non-negative",
                self.attenuation_db
            )));
        }
        if self.grid < MIN_GRID {
            return Err(Error::Spec(format!("grid {} below {MIN_GRID}", self.grid)));
        }
        Ok(())
    }

    /// Overall oversampling ratio seen by this stage, `D * nu`.
    pub fn oversampling(&self) -> u64 {
        self.decimation as u64 * self.residual as u64
    }

    /// Passband ripple as a linear deviation `delta_p`.
    pub fn passband_delta(&self) -> f64 {
        let r = 10f64.powf(-self.ripple_db / 20.0);
        (1.0 - r) / (1.0 + r)
    }

    /// Stopband level as a linear amplitude `delta_s`.
    pub fn stopband_delta(&self) -> f64 {
        10f64.powf(-self.attenuation_db / 20.0)
    }

    pub fn folding_bands(&self) -> Vec<Band> {
        folding_bands(self.decimation, self.cutoff).expect("validated spec")
    }
}

/// Closed frequency interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub lo: Freq,
    pub hi: Freq,
}

impl Band {
    pub fn contains(&self, f: Freq) -> bool {
        self.lo <= f && f <= self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().expect("finite")
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().expect("finite")
    }

    /// `n` equally spaced points from `lo` to `hi` inclusive.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        linspace(self.lo_f64(), self.hi_f64(), n)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Bands `[k/D - fc, k/D + fc]` for `k = 1..=k_M`, clipped at 1/2.
pub fn folding_bands(decimation: u32, cutoff: Freq) -> Result<Vec<Band>> {
    if decimation < 2 {
        return Err(Error::Spec(format!("decimation factor {decimation} < 2")));
    }
    let d = decimation as i64;
    if cutoff <= Freq::zero() || cutoff >= Freq::new(1, 2 * d) {
        return Err(Error::Spec(format!(
            "cutoff {cutoff} overlaps the folding bands of a decimate-by-{d} stage"
        )));
    }
    let k_max = if d % 2 == 0 { d / 2 } else { (d - 1) / 2 };
    let half = Freq::new(1, 2);
    Ok((1..=k_max)
        .map(|k| {
            let centre = Freq::new(k, d);
            Band {
                lo: centre - cutoff,
                hi: (centre + cutoff).min(half),
            }
        })
        .collect())
}

/// `P(e^{-j 2 pi f})`.
pub fn response(p: &IntPoly, f: f64) -> Complex64 {
    let w = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * f);
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * w + c as f64)
}

/// Normalized gain `20 log10(|P(f)| / norm)`; `-inf` on a zero of `P`.
///
/// Magnitudes below `1e-12` of the coefficient mass are roundoff around an
/// exact unit-circle zero and are reported as `-inf`.
pub fn gain_db(p: &IntPoly, f: f64, norm: f64) -> f64 {
    assert!(norm > 0.0, "normalization must be positive");
    let mag = response(p, f).norm();
    if mag <= 1e-12 * (p.abs_sum().max(1) as f64) {
        return f64::NEG_INFINITY;
    }
    20.0 * (mag / norm).log10()
}

/// Normalized gain of `C_q` (unity at DC).
pub fn cp_gain_db(q: CpIndex, f: f64) -> f64 {
    let norm = dc_gain(q).expect("normalizable index") as f64;
    gain_db(cyclotomic_poly(q), f, norm)
}

/// Golden-section search for a maximum of `g` on `[a, b]`.
fn refine_max<G: Fn(f64) -> f64>(g: &G, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..60 {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    gc.max(gd)
}

/// Maximum of `g` over `[lo, hi]`: grid search, then a golden-section
/// refinement around every interior local maximum of the sampled curve.
fn max_over<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, n: usize) -> f64 {
    let xs = linspace(lo, hi, n);
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut best = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for i in 1..n - 1 {
        if ys[i] >= ys[i - 1] && ys[i] >= ys[i + 1] && ys[i].is_finite() {
            best = best.max(refine_max(&g, xs[i - 1], xs[i + 1]));
        }
    }
    best
}

/// Per-CP passband deviation and per-band worst-case attenuation, all in dB.
///
/// `dev[j]` is the largest `|gain|` of the normalized `C_q` over the closed
/// passband `[0, fc]` (`+inf` when a zero lies there). `att[k][j]` is the
/// least attenuation the normalized `C_q` reaches in folding band `k + 1`;
/// it is negative where the CP amplifies. Summing `m_q * att` over a
/// cascade therefore bounds the cascade's attenuation from below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttenuationTable {
    pub indices: Vec<CpIndex>,
    pub dev: Vec<f64>,
    pub att: Vec<Vec<f64>>,
}

impl AttenuationTable {
    pub fn band_count(&self) -> usize {
        self.att.len()
    }

    fn position(&self, q: CpIndex) -> Option<usize> {
        self.indices.iter().position(|&p| p == q)
    }

    pub fn dev_of(&self, q: CpIndex) -> Option<f64> {
        self.position(q).map(|j| self.dev[j])
    }

    /// Attenuation of `q` in band `k` (1-based, as the bands are numbered).
    pub fn att_of(&self, k: usize, q: CpIndex) -> Option<f64> {
        let j = self.position(q)?;
        self.att.get(k.checked_sub(1)?).map(|row| row[j])
    }
}

pub fn attenuation_table(indices: &[CpIndex], spec: &DesignSpec) -> Result<AttenuationTable> {
    if indices.is_empty() {
        return Err(Error::Spec("empty CP set".into()));
    }
    if let Some(q) = indices.iter().find(|q| q.is_degenerate()) {
        return Err(Error::Domain(format!("C_{q} cannot be normalized to unity DC gain")));
    }
    spec.validate()?;
    let bands = spec.folding_bands();
    let fc = spec.cutoff.to_f64().expect("finite");
    let mut dev = Vec::with_capacity(indices.len());
    let mut att = vec![Vec::with_capacity(indices.len()); bands.len()];
    for &q in indices {
        let g = |f: f64| cp_gain_db(q, f);
        let zero_in_passband = zero_set(q).zeros.iter().any(|&z| z <= spec.cutoff);
        dev.push(if zero_in_passband {
            f64::INFINITY
        } else {
            let hi = max_over(g, 0.0, fc, spec.grid);
            let lo = -max_over(|f| -g(f), 0.0, fc, spec.grid);
            hi.abs().max(lo.abs())
        });
        for (k, band) in bands.iter().enumerate() {
            att[k].push(-max_over(g, band.lo_f64(), band.hi_f64(), spec.grid));
        }
    }
    Ok(AttenuationTable {
        indices: indices.to_vec(),
        dev,
        att,
    })
}

/// Normalized composite gain at `f`: `sum_q m_q * gain(C_q, f)`.
pub fn cascade_gain_db(cascade: &Cascade, f: f64) -> f64 {
    cascade
        .terms()
        .iter()
        .map(|&(q, m)| m as f64 * cp_gain_db(q, f))
        .sum()
}

/// Composite response on `grid` equally spaced points over `[0, 1/2]`.
pub fn composite_response(cascade: &Cascade, grid: usize) -> Vec<(f64, f64)> {
    linspace(0.0, 0.5, grid.max(2))
        .into_iter()
        .map(|f| (f, cascade_gain_db(cascade, f)))
        .collect()
}

/// Outcome of checking a cascade against a stage mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Largest `|gain|` over the closed passband, dB.
    pub passband_dev_db: f64,
    pub ripple_db: f64,
    pub ripple_ok: bool,
    /// Least attenuation found in each folding band, dB.
    pub band_min_att_db: Vec<f64>,
    pub attenuation_db: f64,
    pub band_ok: Vec<bool>,
    /// Points per band used by the check.
    pub grid: usize,
    pub tolerance_db: f64,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.ripple_ok && self.band_ok.iter().all(|&b| b)
    }

    pub fn min_attenuation_db(&self) -> f64 {
        self.band_min_att_db.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Direct check of the true composite response on a grid four times the
/// design grid, with [`VERIFY_TOLERANCE_DB`] of slack.
pub fn verify_spec(cascade: &Cascade, spec: &DesignSpec) -> VerifyReport {
    verify_spec_with(cascade, spec, 4 * spec.grid, VERIFY_TOLERANCE_DB)
}

pub fn verify_spec_with(cascade: &Cascade, spec: &DesignSpec, grid: usize, tolerance_db: f64) -> VerifyReport {
    let g = |f: f64| cascade_gain_db(cascade, f);
    let fc = spec.cutoff.to_f64().expect("finite");
    let passband_dev_db = linspace(0.0, fc, grid)
        .into_iter()
        .map(|f| g(f).abs())
        .fold(0.0, f64::max);
    let band_min_att_db: Vec<f64> = spec
        .folding_bands()
        .iter()
        .map(|b| -b.grid(grid).into_iter().map(g).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    VerifyReport {
        passband_dev_db,
        ripple_db: spec.ripple_db,
        ripple_ok: passband_dev_db <= spec.ripple_db + tolerance_db,
        band_ok: band_min_att_db
            .iter()
            .map(|&a| a >= spec.attenuation_db - tolerance_db)
            .collect(),
        band_min_att_db,
        attenuation_db: spec.attenuation_db,
        grid,
        tolerance_db,
    }
}

/// One stage of a multistage chain before it is turned into a [`DesignSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageSpec {
    pub decimation: u32,
    pub residual: u32,
    /// Signal cutoff at this stage's input.
    pub cutoff: Freq,
    pub ripple_db: f64,
    pub attenuation_db: f64,
}

impl StageSpec {
    /// Fails when the stage has no clear folding bands, which happens for
    /// a last stage whose cutoff reaches `1 / (2 D)`.
    pub fn design_spec(&self) -> Result<DesignSpec> {
        DesignSpec::with_cutoff(
            self.decimation,
            self.residual,
            self.cutoff,
            self.ripple_db,
            self.attenuation_db,
        )
    }
}

/// Splits a chain `D_1 D_2 ... D_m` into per-stage requirements. The cutoff
/// grows by `D_i` at every stage; stage `i` sees `nu_i = prod_{p > i} D_p`.
pub fn stage_specs(
    factors: &[u32],
    output_cutoff: Freq,
    ripple_db: f64,
    attenuation_db: f64,
) -> Result<Vec<StageSpec>> {
    if factors.is_empty() {
        return Err(Error::Spec("empty decimation chain".into()));
    }
    if let Some(d) = factors.iter().find(|&&d| d < 2) {
        return Err(Error::Spec(format!("stage decimation factor {d} < 2")));
    }
    if output_cutoff <= Freq::zero() {
        return Err(Error::Spec("cutoff must be positive".into()));
    }
    let total: i64 = factors.iter().map(|&d| d as i64).product();
    if output_cutoff * total > Freq::new(1, 2) {
        return Err(Error::Spec(format!(
            "cutoff {output_cutoff} decimated by {total} exceeds the output Nyquist frequency"
        )));
    }
    let mut cutoff = output_cutoff;
    let mut out = Vec::with_capacity(factors.len());
    for (i, &d) in factors.iter().enumerate() {
        let residual: u32 = factors[i + 1..].iter().product();
        out.push(StageSpec {
            decimation: d,
            residual,
            cutoff,
            ripple_db,
            attenuation_db,
        });
        cutoff *= d as i64;
    }
    Ok(out)
}
