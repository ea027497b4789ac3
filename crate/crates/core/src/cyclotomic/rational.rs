//! Ratios of products of sparse binomial and trinomial factors.
//!
//! These are the recursive (comb/integrator) realizations of cyclotomic
//! polynomials and of their products. Cancellation between numerator and
//! denominator is done by exponent bookkeeping only, never by root matching.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::Result;

/// One sparse section with spacing `n` samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    /// `1 - z^-n`
    BinomMinus(u32),
    /// `1 + z^-n`
    BinomPlus(u32),
    /// `1 + z^-n + z^-2n`
    TrinomPlus(u32),
    /// `1 - z^-n + z^-2n`
    TrinomAlt(u32),
}

impl Factor {
    pub fn spacing(self) -> u32 {
        match self {
            Factor::BinomMinus(n) | Factor::BinomPlus(n) | Factor::TrinomPlus(n) | Factor::TrinomAlt(n) => n,
        }
    }

    /// Same kind of factor with its spacing replaced.
    pub fn with_spacing(self, n: u32) -> Factor {
        match self {
            Factor::BinomMinus(_) => Factor::BinomMinus(n),
            Factor::BinomPlus(_) => Factor::BinomPlus(n),
            Factor::TrinomPlus(_) => Factor::TrinomPlus(n),
            Factor::TrinomAlt(_) => Factor::TrinomAlt(n),
        }
    }

    pub fn poly(self) -> IntPoly {
        let n = self.spacing() as usize;
        let mut c = vec![0i64; 2 * n + 1];
        c[0] = 1;
        match self {
            Factor::BinomMinus(_) => c[n] = -1,
            Factor::BinomPlus(_) => c[n] = 1,
            Factor::TrinomPlus(_) => {
                c[n] = 1;
                c[2 * n] = 1;
            }
            Factor::TrinomAlt(_) => {
                c[n] = -1;
                c[2 * n] = 1;
            }
        }
        IntPoly::new(c)
    }

    /// Adders needed by one occurrence of this section.
    pub fn adders(self) -> usize {
        match self {
            Factor::BinomMinus(_) | Factor::BinomPlus(_) => 1,
            Factor::TrinomPlus(_) | Factor::TrinomAlt(_) => 2,
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Factor::BinomMinus(n) | Factor::BinomPlus(n) => n as usize,
            Factor::TrinomPlus(n) | Factor::TrinomAlt(n) => 2 * n as usize,
        }
    }
}

/// Product of factors raised to nonzero integer exponents.
///
/// Factors are kept in canonical `(kind, spacing)` order; zero exponents are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RationalForm {
    factors: BTreeMap<Factor, i32>,
}

impl RationalForm {
    /// The identity form (empty product).
    pub fn identity() -> Self {
        RationalForm::default()
    }

    pub fn from_factors<I: IntoIterator<Item = (Factor, i32)>>(it: I) -> Self {
        let mut form = RationalForm::identity();
        for (f, e) in it {
            form.multiply_factor(f, e);
        }
        form
    }

    pub fn multiply_factor(&mut self, f: Factor, e: i32) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(f).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&f);
        }
    }

    pub fn multiply(&self, other: &RationalForm) -> RationalForm {
        let mut out = self.clone();
        for (&f, &e) in &other.factors {
            out.multiply_factor(f, e);
        }
        out
    }

    pub fn pow(&self, e: i32) -> RationalForm {
        RationalForm::from_factors(self.factors.iter().map(|(&f, &x)| (f, x * e)))
    }

    pub fn exponent(&self, f: Factor) -> i32 {
        self.factors.get(&f).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Factor, i32)> + '_ {
        self.factors.iter().map(|(&f, &e)| (f, e))
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Numerator factors with their (positive) multiplicities.
    pub fn numerator(&self) -> impl Iterator<Item = (Factor, u32)> + '_ {
        self.factors
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(&f, &e)| (f, e as u32))
    }

    /// Denominator factors with their multiplicities.
    pub fn denominator(&self) -> impl Iterator<Item = (Factor, u32)> + '_ {
        self.factors
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&f, &e)| (f, e.unsigned_abs()))
    }

    pub fn has_denominator(&self) -> bool {
        self.factors.values().any(|&e| e < 0)
    }

    pub fn numerator_poly(&self) -> IntPoly {
        self.numerator()
            .fold(IntPoly::one(), |acc, (f, e)| &acc * &f.poly().pow(e))
    }

    pub fn denominator_poly(&self) -> IntPoly {
        self.denominator()
            .fold(IntPoly::one(), |acc, (f, e)| &acc * &f.poly().pow(e))
    }

    /// Exact polynomial this form denotes; a nonzero remainder means the
    /// form does not describe a polynomial.
    pub fn expand(&self) -> Result<IntPoly> {
        self.numerator_poly().div_exact(&self.denominator_poly())
    }

    /// `F(z^k)`: every spacing is scaled by `k`.
    pub fn substitute_power(&self, k: u32) -> RationalForm {
        RationalForm::from_factors(
            self.factors
                .iter()
                .map(|(&f, &e)| (f.with_spacing(f.spacing() * k), e)),
        )
    }

    pub fn numerator_degree(&self) -> usize {
        self.numerator().map(|(f, e)| f.degree() * e as usize).sum()
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator().map(|(f, e)| f.degree() * e as usize).sum()
    }

    /// Adders of the cascade realization, one section per factor occurrence.
    pub fn adders(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, e)| f.adders() * e.unsigned_abs() as usize)
            .sum()
    }

    /// Delays with a delay line shared between numerator and denominator of
    /// the section: `max(deg num, deg den)`.
    pub fn delays(&self) -> usize {
        self.numerator_degree().max(self.denominator_degree())
    }

    /// Rewrites ratios of sparse factors into shorter sections:
    ///
    /// * `(1 - z^-2n) / (1 - z^-n)  ->  1 + z^-n`
    /// * `(1 - z^-3n) / (1 - z^-n)  ->  1 + z^-n + z^-2n`
    /// * `(1 + z^-3n) / (1 + z^-n)  ->  1 - z^-n + z^-2n`
    ///
    /// and the same ratios with numerator and denominator swapped. Larger
    /// spacings are paired first. The expansion is unchanged and the adder
    /// count never grows; a form where nothing pairs is returned as is.
    pub fn compact(&self) -> RationalForm {
        // (binomial, ratio, quotient factor)
        type Rule = (fn(u32) -> Factor, u32, fn(u32) -> Factor);
        const RULES: [Rule; 3] = [
            (Factor::BinomMinus, 2, Factor::BinomPlus),
            (Factor::BinomMinus, 3, Factor::TrinomPlus),
            (Factor::BinomPlus, 3, Factor::TrinomAlt),
        ];
        let mut form = self.clone();
        'outer: loop {
            let mut keys: Vec<Factor> = form.factors.keys().copied().collect();
            keys.sort_by(|a, b| b.spacing().cmp(&a.spacing()).then(a.cmp(b)));
            for f in keys {
                let e = form.exponent(f);
                for (src, ratio, dst) in RULES {
                    let m = f.spacing();
                    if f != src(m) || m % ratio != 0 {
                        continue;
                    }
                    let inner = src(m / ratio);
                    let ei = form.exponent(inner);
                    if ei == 0 || (ei > 0) == (e > 0) {
                        continue;
                    }
                    let t = e.abs().min(ei.abs()) * e.signum();
                    form.multiply_factor(f, -t);
                    form.multiply_factor(inner, t);
                    form.multiply_factor(dst(m / ratio), t);
                    continue 'outer;
                }
            }
            break;
        }
        form
    }
}

fn write_product(f: &mut fmt::Formatter<'_>, items: &[(Factor, u32)]) -> fmt::Result {
    for (fac, e) in items {
        write!(f, "({})", fac.poly())?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// `(1 - z^-1)(1 - z^-33) / ((1 - z^-3)(1 - z^-11))`, factors in canonical order.
impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<_> = self.numerator().collect();
        let den: Vec<_> = self.denominator().collect();
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            write_product(f, &num)?;
        }
        if den.is_empty() {
            return Ok(());
        }
        write!(f, " / ")?;
        let wrap = den.len() > 1 || den[0].1 > 1;
        if wrap {
            write!(f, "(")?;
        }
        write_product(f, &den)?;
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::Factor::*;
    use super::*;

    #[test]
    fn geometric_sum_expansion() {
        let form = RationalForm::from_factors([(BinomMinus(4), 1), (BinomMinus(1), -1)]);
        assert_eq!(form.expand().unwrap().coeffs(), &[1, 1, 1, 1]);
    }

    #[test]
    fn binomial_power_expansion() {
        let form = RationalForm::from_factors([(BinomPlus(4), 3)]);
        assert_eq!(
            form.expand().unwrap().coeffs(),
            &[1, 0, 0, 0, 3, 0, 0, 0, 3, 0, 0, 0, 1]
        );
    }

    #[test]
    fn inexact_form_is_rejected() {
        let form = RationalForm::from_factors([(BinomMinus(3), 1), (BinomMinus(2), -1)]);
        assert!(form.expand().is_err());
    }

    #[test]
    fn compacts_q22_form() {
        let form = RationalForm::from_factors([
            (BinomMinus(22), 1),
            (BinomMinus(1), 1),
            (BinomMinus(2), -1),
            (BinomMinus(11), -1),
        ]);
        let c = form.compact();
        assert_eq!(c, RationalForm::from_factors([(BinomPlus(11), 1), (BinomPlus(1), -1)]));
        assert_eq!(c.expand().unwrap(), form.expand().unwrap());
    }

    #[test]
    fn compacts_comb_to_trinomial() {
        let form = RationalForm::from_factors([(BinomMinus(3), 1), (BinomMinus(1), -1)]);
        assert_eq!(form.compact(), RationalForm::from_factors([(TrinomPlus(1), 1)]));
    }

    #[test]
    fn compact_is_a_fixed_point_on_compact_forms() {
        let form = RationalForm::from_factors([(BinomPlus(11), 1), (BinomPlus(1), -1)]);
        assert_eq!(form.compact(), form);
        assert_eq!(form.compact().compact(), form.compact());
    }

    #[test]
    fn zero_exponents_are_dropped() {
        let mut form = RationalForm::from_factors([(BinomMinus(8), 3)]);
        form.multiply_factor(BinomMinus(8), -3);
        assert!(form.is_identity());
        assert_eq!(form.expand().unwrap(), IntPoly::one());
    }

    #[test]
    fn display_is_canonical() {
        let form = RationalForm::from_factors([
            (BinomMinus(33), 1),
            (BinomMinus(11), -1),
            (BinomMinus(1), 1),
            (BinomMinus(3), -1),
        ]);
        assert_eq!(
            form.to_string(),
            "(1 - z^-1)(1 - z^-33) / ((1 - z^-3)(1 - z^-11))"
        );
        let cic = RationalForm::from_factors([(BinomMinus(8), 3), (BinomMinus(1), -1)]);
        assert_eq!(cic.to_string(), "(1 - z^-8)^3 / (1 - z^-1)");
    }
}
