use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::IntPoly;

/// Canonical signed-digit form: `coefficient = sum sign * 2^shift`, no two
/// nonzero digits adjacent. Terms are ordered by descending shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pow2Form {
    pub coefficient: i64,
    pub terms: Vec<(i8, u32)>,
}

impl Pow2Form {
    pub fn value(&self) -> i128 {
        self.terms
            .iter()
            .map(|&(s, k)| s as i128 * (1i128 << k))
            .sum()
    }

    pub fn digit_count(&self) -> usize {
        self.terms.len()
    }

    /// Adders needed to combine the shifted terms.
    pub fn adders(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }
}

/// `+2^5 -2^3 -2^1`; zero prints as `0`.
impl fmt::Display for Pow2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(s, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}2^{k}", if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Non-adjacent form of `n`, which has the fewest nonzero digits of any
/// signed binary representation.
pub fn pow2_decompose(n: i64) -> Pow2Form {
    let mut v = n as i128;
    let mut shift = 0u32;
    let mut terms = Vec::new();
    while v != 0 {
        if v & 1 != 0 {
            // digit is +1 when v = 1 (mod 4), -1 when v = 3 (mod 4)
            let d: i128 = 2 - v.rem_euclid(4);
            terms.push((d as i8, shift));
            v -= d;
        }
        v >>= 1;
        shift += 1;
    }
    terms.reverse();
    Pow2Form { coefficient: n, terms }
}

/// Shift-and-add totals for a set of branch polynomials realized with CSD
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsdTotals {
    pub nonzero_digits: usize,
    /// Adders inside coefficients plus tap and branch summations.
    pub adders: usize,
    /// Terms needing a nonzero shift.
    pub shifts: usize,
}

impl CsdTotals {
    pub fn of_bank(components: &[IntPoly]) -> Self {
        let mut t = CsdTotals {
            nonzero_digits: 0,
            adders: 0,
            shifts: 0,
        };
        let mut live_branches = 0usize;
        for e in components {
            let taps = e.nonzero_count();
            if taps == 0 {
                continue;
            }
            live_branches += 1;
            t.adders += taps - 1;
            for &c in e.coeffs().iter().filter(|&&c| c != 0) {
                let f = pow2_decompose(c);
                t.nonzero_digits += f.digit_count();
                t.adders += f.adders();
                t.shifts += f.terms.iter().filter(|&&(_, k)| k > 0).count();
            }
        }
        t.adders += live_branches.saturating_sub(1);
        t
    }
}
