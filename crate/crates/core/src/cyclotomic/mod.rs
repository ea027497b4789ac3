//! Cyclotomic polynomials `C_q(z)` in the delay operator and their factored
//! comb/integrator forms.
//!
//! Everything here is exact integer arithmetic.

mod arith;
mod poly;
mod rational;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use arith::{divisors, factorize, gcd, is_squarefree, mobius, prime_power_base, radical, totient};
pub use poly::IntPoly;
pub use rational::{Factor, RationalForm};

use crate::error::{Error, Result};

/// Largest index whose polynomial is guaranteed to have coefficients in {-1, 0, 1}.
pub const MAX_INDEX: u32 = 104;

/// Index `q` of a cyclotomic polynomial usable in a design, `1 <= q <= 104`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct CpIndex(u32);

impl CpIndex {
    pub fn new(q: u32) -> Result<Self> {
        if (1..=MAX_INDEX).contains(&q) {
            Ok(CpIndex(q))
        } else {
            Err(Error::IndexOutOfRange(q as u64))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `C_1 = 1 - z^-1` has a zero at DC and cannot be normalized.
    pub fn is_degenerate(self) -> bool {
        self.0 == 1
    }

    /// All indices `1..=104`.
    pub fn all() -> impl Iterator<Item = CpIndex> {
        (1..=MAX_INDEX).map(CpIndex)
    }
}

impl TryFrom<u32> for CpIndex {
    type Error = Error;
    fn try_from(q: u32) -> Result<Self> {
        CpIndex::new(q)
    }
}

impl From<CpIndex> for u32 {
    fn from(q: CpIndex) -> u32 {
        q.0
    }
}

impl fmt::Display for CpIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Coefficients of a squarefree-index polynomial from the Möbius/totient
/// recursion, seeded with `c_0 = 1`. Each step divides by `d`; the division
/// is asserted to be exact.
fn squarefree_by_recursion(q: u64) -> IntPoly {
    let phi = totient(q).expect("q >= 1") as usize;
    let mu_q = mobius(q).expect("q >= 1") as i64;
    debug_assert!(mu_q != 0, "recursion needs a squarefree index");
    let mut c: Vec<i64> = Vec::with_capacity(phi + 1);
    c.push(1);
    for d in 1..=phi {
        let s: i64 = (0..d)
            .map(|p| {
                let g = gcd(q, (d - p) as u64);
                c[p] * mobius(g).expect("g >= 1") as i64 * totient(g).expect("g >= 1") as i64
            })
            .sum();
        let num = -mu_q * s;
        assert!(num % d as i64 == 0, "coefficient recursion left a remainder (q={q}, d={d})");
        c.push(num / d as i64);
    }
    // c_d multiplies z^-(phi - d)
    c.reverse();
    IntPoly::new(c)
}

/// `C_q` for any `q >= 1`, without the design-range restriction.
///
/// Squarefree indices use the coefficient recursion. Any other index uses
/// `C_q(z) = C_rad(q)(z^(q / rad(q)))`, which follows from applying
/// `C_{m n^k}(z) = C_{mn}(z^{n^(k-1)})` once per repeated prime.
pub fn cyclotomic_poly_unbounded(q: u64) -> Result<IntPoly> {
    match q {
        0 => Err(Error::Domain("cyclotomic index must be positive".into())),
        1 => Ok(IntPoly::new(vec![1, -1])),
        _ => {
            let rad = radical(q);
            if rad == q {
                Ok(squarefree_by_recursion(q))
            } else {
                Ok(squarefree_by_recursion(rad).substitute_power((q / rad) as usize))
            }
        }
    }
}

fn table() -> &'static [IntPoly] {
    static TABLE: OnceLock<Vec<IntPoly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=MAX_INDEX as u64)
            .map(|q| cyclotomic_poly_unbounded(q).expect("q >= 1"))
            .collect()
    })
}

/// `C_q(z)` for a design index.
pub fn cyclotomic_poly(q: CpIndex) -> &'static IntPoly {
    &table()[q.0 as usize - 1]
}

/// Möbius-inversion form `prod_{d | q} (1 - z^-d)^mu(q/d)`.
///
/// For `q = 1` this is the bare comb `1 - z^-1` (see [`CpIndex::is_degenerate`]).
pub fn cyclotomic_rational(q: CpIndex) -> RationalForm {
    let q = q.0 as u64;
    RationalForm::from_factors(divisors(q).into_iter().filter_map(|d| {
        let mu = mobius(q / d).expect("divisor >= 1");
        (mu != 0).then_some((Factor::BinomMinus(d as u32), mu as i32))
    }))
}

/// Gain at DC: `p` when `q = p^k`, otherwise 1. Undefined for `q = 1`.
pub fn dc_gain(q: CpIndex) -> Result<u64> {
    if q.is_degenerate() {
        return Err(Error::Domain("C_1 vanishes at DC and has no normalization".into()));
    }
    Ok(prime_power_base(q.0 as u64).unwrap_or(1))
}

/// Checks `prod_{q | d} C_q(z) = 1 - z^-d` coefficient by coefficient.
pub fn verify_product_identity(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let product = divisors(d).into_iter().fold(IntPoly::one(), |acc, q| {
        &acc * &cyclotomic_poly_unbounded(q).expect("divisor >= 1")
    });
    product == &IntPoly::one() - &IntPoly::monomial(1, d as usize)
}
