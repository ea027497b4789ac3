//! Realizable architectures for an optimized cascade: direct FIR, polyphase
//! bank, recursive (integrator/comb) form and power-of-two stage chains.

mod csd;
mod stages;

use serde::{Deserialize, Serialize};

use crate::cascade::Cascade;
use crate::cyclotomic::{cyclotomic_rational, Factor, IntPoly, RationalForm};
use crate::error::{Error, Result};

pub use csd::{pow2_decompose, CsdTotals, Pow2Form};
pub use stages::{
    cascade_pow2_stages, wordlength_plan, ArchitectureJson, Stage, StageGraph, StageJson, StagePlan, Transfer,
};

/// Impulse response of the cascade, by exact convolution. The empty
/// cascade yields the constant `1`.
pub fn expand_impulse(cascade: &Cascade) -> IntPoly {
    cascade.impulse_response()
}

/// `H(z) = sum_i z^-i E_i(z^D)` with `E_i` holding `h(D t + i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyphaseBank {
    pub decimation: u32,
    pub components: Vec<IntPoly>,
}

impl PolyphaseBank {
    /// Interleaves the components back into the full-rate polynomial.
    pub fn reconstruct(&self) -> IntPoly {
        let d = self.decimation as usize;
        let len = self
            .components
            .iter()
            .enumerate()
            .map(|(i, e)| if e.is_zero() { 0 } else { (e.len() - 1) * d + i + 1 })
            .max()
            .unwrap_or(0);
        let mut h = vec![0i64; len];
        for (i, e) in self.components.iter().enumerate() {
            for (t, &c) in e.coeffs().iter().enumerate() {
                h[t * d + i] = c;
            }
        }
        IntPoly::new(h)
    }

    /// CSD digit and adder totals over every coefficient of the bank.
    pub fn csd_totals(&self) -> CsdTotals {
        CsdTotals::of_bank(&self.components)
    }
}

pub fn polyphase_decompose(h: &IntPoly, decimation: u32) -> Result<PolyphaseBank> {
    if decimation < 2 {
        return Err(Error::Domain(format!("polyphase decimation {decimation} must be at least 2")));
    }
    let d = decimation as usize;
    let components = (0..d)
        .map(|i| IntPoly::new(h.coeffs().iter().skip(i).step_by(d).copied().collect()))
        .collect();
    Ok(PolyphaseBank {
        decimation,
        components,
    })
}

/// Product of the comb-ratio form of every factor; cancellation happens in
/// the exponent bookkeeping of [`RationalForm`].
pub fn recursive_cic_form(cascade: &Cascade) -> RationalForm {
    cascade
        .terms()
        .iter()
        .fold(RationalForm::identity(), |acc, &(q, m)| {
            acc.multiply(&cyclotomic_rational(q).pow(m as i32))
        })
}

/// Splits `form` around a `÷D` decimator. Every numerator factor whose
/// spacing is a multiple of `D` moves after the decimator with its spacing
/// divided by `D`; everything else (all recursive sections included) stays
/// in front.
pub fn noble_shift(form: &RationalForm, decimation: u32) -> Result<(RationalForm, RationalForm)> {
    if decimation == 0 {
        return Err(Error::Domain("decimation factor must be positive".into()));
    }
    let movable: Vec<Factor> = form
        .numerator()
        .map(|(f, _)| f)
        .filter(|f| f.spacing() % decimation == 0)
        .collect();
    noble_shift_selected(form, decimation, &movable)
}

/// Like [`noble_shift`] but moves exactly the numerator factors listed in
/// `selected` (all of their multiplicity), failing when one cannot move.
pub fn noble_shift_selected(
    form: &RationalForm,
    decimation: u32,
    selected: &[Factor],
) -> Result<(RationalForm, RationalForm)> {
    if decimation == 0 {
        return Err(Error::Domain("decimation factor must be positive".into()));
    }
    let mut pre = form.clone();
    let mut post = RationalForm::identity();
    for &f in selected {
        let e = pre.exponent(f);
        if e <= 0 {
            return Err(Error::Noble(format!("{f:?} is not a numerator factor")));
        }
        if f.spacing() % decimation != 0 {
            return Err(Error::Noble(format!(
                "spacing {} of {f:?} is not a multiple of {decimation}",
                f.spacing()
            )));
        }
        pre.multiply_factor(f, -e);
        post.multiply_factor(f.with_spacing(f.spacing() / decimation), e);
    }
    Ok((pre, post))
}
