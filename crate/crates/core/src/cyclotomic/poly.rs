//! Exact integer polynomials in the delay operator `z^-1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial `sum_i coeffs[i] * z^-i` with integer coefficients.
///
/// Stored in ascending powers of `z^-1` with trailing zeros trimmed, so the
/// zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `c * z^-power`.
    pub fn monomial(c: i64, power: usize) -> Self {
        let mut coeffs = vec![0; power + 1];
        coeffs[power] = c;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Coefficient of `z^-i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of taps, `degree + 1` (zero for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Sum of absolute coefficient values, the worst-case gain.
    pub fn abs_sum(&self) -> u128 {
        self.coeffs.iter().map(|c| c.unsigned_abs() as u128).sum()
    }

    /// Value at `z = 1`.
    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128).sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `P(z^k)`: every power is multiplied by `k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution factor must be positive");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        IntPoly { coeffs }
    }

    /// `P(-z)`: negates the odd-power coefficients.
    pub fn negate_argument(&self) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Long division returning `(quotient, remainder)`.
    ///
    /// The divisor's leading coefficient must divide every intermediate
    /// leading coefficient; otherwise the division is not exact over the
    /// integers and an error is returned.
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((IntPoly::zero(), IntPoly::zero()));
        };
        if nd < dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![0i64; nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = rem[shift + dd];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Err(Error::InexactDivision {
                    remainder: IntPoly::new(rem).to_string(),
                });
            }
            let f = top / lead;
            quot[shift] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= f * d;
            }
        }
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                remainder: r.to_string(),
            });
        }
        Ok(q)
    }
}

impl From<Vec<i64>> for IntPoly {
    fn from(v: Vec<i64>) -> Self {
        IntPoly::new(v)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).expect("coefficient overflow");
                out[i + j] = out[i + j].checked_add(prod).expect("coefficient overflow");
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Renders ascending powers with explicit signs, e.g. `1 - z^-2 + z^-4`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (p, 1) => write!(f, "z^-{p}")?,
                (p, m) => write!(f, "{m}z^-{p}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses the rendering produced by `Display`. Whitespace is ignored and
    /// an optional `*` may separate a coefficient from `z^-k`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        // split before every sign that is not part of an exponent "^-k"
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut prev = '\0';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != '^' {
                terms.push((if ch == '-' { -1 } else { 1 }, String::new()));
            } else {
                if terms.is_empty() {
                    terms.push((1, String::new()));
                }
                terms.last_mut().expect("nonempty").1.push(ch);
            }
            prev = ch;
        }
        let mut coeffs: Vec<i64> = Vec::new();
        for (sign, term) in &terms {
            let (mag, power) = match term.find('z') {
                None => (term.as_str(), 0usize),
                Some(zi) => {
                    let exp = term[zi + 1..]
                        .strip_prefix("^-")
                        .ok_or_else(|| bad("expected z^-k"))?;
                    let power: usize = exp.parse().map_err(|_| bad("bad exponent"))?;
                    (term[..zi].trim_end_matches('*'), power)
                }
            };
            let c: i64 = match (mag.is_empty(), term.contains('z')) {
                (true, true) => 1,
                (true, false) => return Err(bad("empty term")),
                (false, _) => mag.parse().map_err(|_| bad("bad coefficient"))?,
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] += sign * c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_with_explicit_signs() {
        assert_eq!(IntPoly::new(vec![1, 0, -1, 0, 1]).to_string(), "1 - z^-2 + z^-4");
        assert_eq!(IntPoly::new(vec![1, -1]).to_string(), "1 - z^-1");
        assert_eq!(IntPoly::new(vec![0, -3, 0, 22]).to_string(), "-3z^-1 + 22z^-3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn parses_loose_input() {
        let p: IntPoly = "1 + 22*z^-1 + 9 z^-2".parse().unwrap();
        assert_eq!(p.coeffs(), &[1, 22, 9]);
        let p: IntPoly = "-z^-3+z^-3+2".parse().unwrap();
        assert_eq!(p.coeffs(), &[2]);
        assert!("1 + z^2".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
        assert!("1 + + z^-1".parse::<IntPoly>().is_err());
    }

    #[test]
    fn division_exact_and_inexact() {
        let num = IntPoly::new(vec![1, 0, 0, 0, -1]);
        let den = IntPoly::new(vec![1, -1]);
        assert_eq!(num.div_exact(&den).unwrap().coeffs(), &[1, 1, 1, 1]);
        let odd = IntPoly::new(vec![1, 0, 1]);
        assert!(matches!(odd.div_exact(&den), Err(Error::InexactDivision { .. })));
        assert!(num.div_exact(&IntPoly::zero()).is_err());
    }

    #[test]
    fn substitution_and_negation() {
        let p = IntPoly::new(vec![1, 1, 1]);
        assert_eq!(p.substitute_power(3).coeffs(), &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(p.negate_argument().coeffs(), &[1, -1, 1]);
    }

    fn poly_strategy() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-50i64..50, 0..24).prop_map(IntPoly::new)
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(p in poly_strategy()) {
            let back: IntPoly = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn product_divides_back(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            // exact whenever b's leading coefficient is a unit, and the quotient matches
            if b.coeffs()[b.len() - 1].abs() == 1 {
                prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
            }
        }
    }
}
