//! Bit-exact streaming runs of every architecture and cross-checks between
//! them.
//!
//! Input samples are two's-complement integers of a declared width. Direct,
//! polyphase and power-of-two chains use exact wide arithmetic; recursive
//! sections run modulo `2^W`, which gives the exact output whenever the
//! final result fits in `W` bits. All state starts at zero and every
//! architecture here has latency 0, so outputs align index by index.

use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::cyclotomic::{IntPoly, RationalForm};
use crate::error::{Error, Result};
use crate::synthesis::{
    cascade_pow2_stages, expand_impulse, noble_shift, polyphase_decompose, recursive_cic_form, PolyphaseBank,
    StageGraph, Transfer,
};

/// xorshift64 with shifts (13, 7, 17).
#[derive(Debug, Clone)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    /// A zero seed would stall the generator, so it is replaced by a fixed
    /// nonzero constant.
    pub fn new(seed: u64) -> Self {
        XorShift64 {
            state: if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform two's-complement sample of `bits` bits taken from the top of
    /// the next output; 1 bit gives values in `{-1, 0}`.
    pub fn next_sample(&mut self, bits: u32) -> i64 {
        let u = self.next_u64() >> (64 - bits);
        if bits == 64 {
            u as i64
        } else if u >= 1 << (bits - 1) {
            u as i64 - (1i64 << bits)
        } else {
            u as i64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StimulusKind {
    Impulse,
    Step,
    Prng { seed: u64 },
    File { samples: Vec<i64> },
}

/// Input sequence with its declared sample width.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stimulus {
    pub kind: StimulusKind,
    pub length: usize,
    pub width_bits: u32,
}

impl Stimulus {
    /// Unit impulse; a value of 1 needs 2 bits in two's complement.
    pub fn impulse(length: usize) -> Self {
        Stimulus {
            kind: StimulusKind::Impulse,
            length,
            width_bits: 2,
        }
    }

    pub fn step(length: usize) -> Self {
        Stimulus {
            kind: StimulusKind::Step,
            length,
            width_bits: 2,
        }
    }

    pub fn prng(seed: u64, length: usize, width_bits: u32) -> Result<Self> {
        check_width(width_bits)?;
        Ok(Stimulus {
            kind: StimulusKind::Prng { seed },
            length,
            width_bits,
        })
    }

    /// Explicit samples, each of which must fit in `width_bits`.
    pub fn from_samples(samples: Vec<i64>, width_bits: u32) -> Result<Self> {
        check_width(width_bits)?;
        if let Some(s) = samples.iter().find(|&&s| bits_needed(s as i128) > width_bits) {
            return Err(Error::Domain(format!("sample {s} does not fit in {width_bits} bits")));
        }
        Ok(Stimulus {
            length: samples.len(),
            kind: StimulusKind::File { samples },
            width_bits,
        })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            StimulusKind::Impulse => "impulse".into(),
            StimulusKind::Step => "step".into(),
            StimulusKind::Prng { seed } => format!("prng({seed:#x}, {})", self.length),
            StimulusKind::File { .. } => "file".into(),
        }
    }

    pub fn samples(&self) -> Vec<i64> {
        match &self.kind {
            StimulusKind::Impulse => (0..self.length).map(|n| (n == 0) as i64).collect(),
            StimulusKind::Step => vec![1; self.length],
            StimulusKind::Prng { seed } => {
                let mut g = XorShift64::new(*seed);
                (0..self.length).map(|_| g.next_sample(self.width_bits)).collect()
            }
            StimulusKind::File { samples } => samples.clone(),
        }
    }
}

fn check_width(bits: u32) -> Result<()> {
    if (1..=64).contains(&bits) {
        Ok(())
    } else {
        Err(Error::Domain(format!("sample width {bits} outside 1..=64")))
    }
}

/// Two's-complement width needed to hold `v`.
pub fn bits_needed(v: i128) -> u32 {
    let mag = if v < 0 { !v } else { v };
    129 - mag.leading_zeros()
}

/// Sign-extends the low `w` bits of `v`.
fn wrap(v: i128, w: u32) -> i128 {
    if w >= 128 {
        v
    } else {
        let s = 128 - w;
        (v << s) >> s
    }
}

fn output_len(n: usize, decimation: usize) -> usize {
    n.div_ceil(decimation)
}

/// `y[n] = sum_i h(i) x[nD - i]`, exactly.
///
/// Panics if `decimation` is zero.
pub fn fir_decimate(h: &IntPoly, decimation: u32, x: &[i64]) -> Vec<i128> {
    assert!(decimation >= 1, "decimation factor must be positive");
    let d = decimation as usize;
    (0..output_len(x.len(), d))
        .map(|n| {
            let t = n * d;
            h.coeffs()
                .iter()
                .enumerate()
                .take(t + 1)
                .map(|(i, &c)| c as i128 * x[t - i] as i128)
                .sum()
        })
        .collect()
}

/// Commutator feeding branch `i` with `x[nD - i]`; branch outputs are
/// summed at the low rate.
pub fn polyphase_decimate(bank: &PolyphaseBank, x: &[i64]) -> Vec<i128> {
    let d = bank.decimation as usize;
    let n_out = output_len(x.len(), d);
    let mut y = vec![0i128; n_out];
    for (i, e) in bank.components.iter().enumerate() {
        let u: Vec<i128> = (0..n_out)
            .map(|n| (n * d).checked_sub(i).map_or(0, |k| x[k] as i128))
            .collect();
        for (t, &c) in e.coeffs().iter().enumerate().filter(|(_, &c)| c != 0) {
            for n in t..n_out {
                y[n] += c as i128 * u[n - t];
            }
        }
    }
    y
}

fn fir_section(x: &[i128], p: &IntPoly, w: u32) -> Vec<i128> {
    let taps: Vec<(usize, i128)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k, c as i128))
        .collect();
    (0..x.len())
        .map(|n| {
            let acc = taps
                .iter()
                .filter(|&&(k, _)| k <= n)
                .fold(0i128, |a, &(k, c)| a.wrapping_add(c.wrapping_mul(x[n - k])));
            wrap(acc, w)
        })
        .collect()
}

/// `y[n] = x[n] - sum_{k>=1} p_k y[n-k]` for a monic `p`.
fn iir_section(x: &[i128], p: &IntPoly, w: u32) -> Vec<i128> {
    debug_assert_eq!(p.coeff(0), 1);
    let fb: Vec<(usize, i128)> = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k, c as i128))
        .collect();
    let mut y = Vec::with_capacity(x.len());
    for n in 0..x.len() {
        let acc = fb
            .iter()
            .filter(|&&(k, _)| k <= n)
            .fold(x[n], |a, &(k, c)| a.wrapping_sub(c.wrapping_mul(y[n - k])));
        y.push(wrap(acc, w));
    }
    y
}

/// Recursive sections first, then the nonrecursive ones, all modulo `2^w`.
fn run_rational(form: &RationalForm, x: Vec<i128>, w: u32) -> Vec<i128> {
    let mut cur = x;
    for (f, e) in form.denominator() {
        for _ in 0..e {
            cur = iir_section(&cur, &f.poly(), w);
        }
    }
    for (f, e) in form.numerator() {
        for _ in 0..e {
            cur = fir_section(&cur, &f.poly(), w);
        }
    }
    cur.into_iter().map(|v| wrap(v, w)).collect()
}

fn downsample(x: Vec<i128>, d: usize) -> Vec<i128> {
    x.into_iter().step_by(d).collect()
}

/// Integrators (and any combs that cannot move) before the `÷D`
/// decimator, the moved combs after it; registers are `width` bits wide.
pub fn recursive_decimate(pre: &RationalForm, decimation: u32, post: &RationalForm, x: &[i64], width: u32) -> Vec<i128> {
    assert!(decimation >= 1, "decimation factor must be positive");
    let x: Vec<i128> = x.iter().map(|&v| wrap(v as i128, width)).collect();
    let mid = downsample(run_rational(pre, x, width), decimation as usize);
    run_rational(post, mid, width)
}

/// Runs a stage chain: polynomial stages exactly, rational stages modulo
/// their planned width (full width when unplanned).
pub fn run_stage_graph(graph: &StageGraph, x: &[i64]) -> Vec<i128> {
    let mut cur: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    for s in &graph.stages {
        cur = match &s.transfer {
            Transfer::Poly(p) => fir_decimate_wide(p, &cur),
            Transfer::Rational(r) => {
                let w = if s.width_bits == 0 { 128 } else { s.width_bits };
                run_rational(r, cur, w)
            }
        };
        cur = downsample(cur, s.decimate_by.max(1) as usize);
    }
    cur
}

fn fir_decimate_wide(p: &IntPoly, x: &[i128]) -> Vec<i128> {
    (0..x.len())
        .map(|n| {
            p.coeffs()
                .iter()
                .enumerate()
                .take(n + 1)
                .map(|(i, &c)| c as i128 * x[n - i])
                .sum()
        })
        .collect()
}

/// One realization of a decimator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "architecture", rename_all = "lowercase")]
pub enum Architecture {
    Direct {
        h: IntPoly,
        decimation: u32,
    },
    Polyphase {
        bank: PolyphaseBank,
    },
    /// Registers are `stimulus width + extra_bits` wide; `planned_bits` is
    /// the growth the wordlength rule asks for.
    Recursive {
        pre: RationalForm,
        decimation: u32,
        post: RationalForm,
        extra_bits: u32,
        planned_bits: u32,
    },
    Cascade {
        graph: StageGraph,
    },
}

impl Architecture {
    pub fn name(&self) -> &'static str {
        match self {
            Architecture::Direct { .. } => "direct",
            Architecture::Polyphase { .. } => "polyphase",
            Architecture::Recursive { .. } => "recursive",
            Architecture::Cascade { .. } => "cascade",
        }
    }

    /// Output samples of delay relative to the direct form.
    pub fn latency(&self) -> usize {
        0
    }

    pub fn run(&self, x: &Stimulus) -> Vec<i128> {
        let samples = x.samples();
        match self {
            Architecture::Direct { h, decimation } => fir_decimate(h, *decimation, &samples),
            Architecture::Polyphase { bank } => polyphase_decimate(bank, &samples),
            Architecture::Recursive {
                pre,
                decimation,
                post,
                extra_bits,
                ..
            } => recursive_decimate(pre, *decimation, post, &samples, x.width_bits + extra_bits),
            Architecture::Cascade { graph } => run_stage_graph(graph, &samples),
        }
    }
}

/// Every architecture that applies to `cascade` at decimation `D`, the
/// direct form first.
pub fn architectures(cascade: &Cascade, decimation: u32) -> Result<Vec<Architecture>> {
    if decimation == 0 {
        return Err(Error::Domain("decimation factor must be positive".into()));
    }
    let h = expand_impulse(cascade);
    let growth = bits_needed(h.abs_sum() as i128) - 1;
    let (pre, post) = noble_shift(&recursive_cic_form(cascade), decimation)?;
    let mut out = vec![Architecture::Direct {
        h: h.clone(),
        decimation,
    }];
    if decimation >= 2 {
        out.push(Architecture::Polyphase {
            bank: polyphase_decompose(&h, decimation)?,
        });
    }
    out.push(Architecture::Recursive {
        pre,
        decimation,
        post,
        extra_bits: growth,
        planned_bits: growth,
    });
    if let Some(graph) = cascade_pow2_stages(cascade, decimation).graph() {
        out.push(Architecture::Cascade { graph });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchRun {
    pub architecture: String,
    pub latency: usize,
    /// One output stream per stimulus.
    pub outputs: Vec<Vec<i128>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub stimulus: String,
    pub architecture: String,
    pub index: usize,
    pub expected: Option<i128>,
    pub actual: Option<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub stimuli: Vec<String>,
    pub runs: Vec<ArchRun>,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    /// Widest output sample seen, in two's-complement bits.
    pub max_width_bits: u32,
    pub warnings: Vec<String>,
}

/// Runs every architecture on every stimulus and compares each against the
/// first one after latency alignment.
pub fn compare(archs: &[Architecture], stimuli: &[Stimulus]) -> RunReport {
    let mut warnings = Vec::new();
    for a in archs {
        if let Architecture::Recursive {
            extra_bits, planned_bits, ..
        } = a
        {
            if extra_bits < planned_bits {
                warnings.push(format!(
                    "recursive registers {extra_bits} bits above input width, plan asks for {planned_bits}: overflow possible"
                ));
            }
        }
    }
    let runs: Vec<ArchRun> = archs
        .iter()
        .map(|a| ArchRun {
            architecture: a.name().to_string(),
            latency: a.latency(),
            outputs: stimuli.iter().map(|x| a.run(x)).collect(),
        })
        .collect();

    let mut first_mismatch = None;
    if let Some((reference, rest)) = runs.split_first() {
        'outer: for (s, x) in stimuli.iter().enumerate() {
            let r = &reference.outputs[s][reference.latency.min(reference.outputs[s].len())..];
            for run in rest {
                let o = &run.outputs[s][run.latency.min(run.outputs[s].len())..];
                let idx = (0..r.len().max(o.len())).find(|&i| r.get(i) != o.get(i));
                if let Some(index) = idx {
                    first_mismatch = Some(Mismatch {
                        stimulus: x.name(),
                        architecture: run.architecture.clone(),
                        index,
                        expected: r.get(index).copied(),
                        actual: o.get(index).copied(),
                    });
                    break 'outer;
                }
            }
        }
    }
    let max_width_bits = runs
        .iter()
        .flat_map(|r| r.outputs.iter().flatten())
        .map(|&v| bits_needed(v))
        .max()
        .unwrap_or(0);
    RunReport {
        stimuli: stimuli.iter().map(Stimulus::name).collect(),
        pass: first_mismatch.is_none(),
        runs,
        first_mismatch,
        max_width_bits,
        warnings,
    }
}

pub fn equivalence_check(cascade: &Cascade, decimation: u32, stimuli: &[Stimulus]) -> Result<RunReport> {
    Ok(compare(&architectures(cascade, decimation)?, stimuli))
}

/// One decimal integer per line.
pub fn format_stream(stream: &[i128]) -> String {
    let mut s = String::with_capacity(stream.len() * 4);
    for v in stream {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}

/// Reads one integer per line; blank lines and `#` comments are skipped.
pub fn parse_stream(text: &str) -> Result<Vec<i64>> {
    text.lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.parse::<i64>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}
