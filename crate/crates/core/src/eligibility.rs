//! Selection of the CPs worth offering to the optimizer, by exact rational
//! placement of their zeros relative to the passband and folding bands.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{gcd, CpIndex, MAX_INDEX};
use crate::spectrum::{DesignSpec, Freq};

/// Zero frequencies of `C_q` folded into `[0, 1/2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub q: CpIndex,
    /// Sorted, without duplicates.
    pub zeros: Vec<Freq>,
}

impl ZeroSet {
    /// `C_1`'s only zero sits at DC.
    pub fn is_degenerate(&self) -> bool {
        self.q.is_degenerate()
    }
}

/// Zeros `i/q` with `gcd(i, q) = 1`, folded by `f -> min(f, 1 - f)`.
pub fn zero_set(q: CpIndex) -> ZeroSet {
    let n = q.get() as i64;
    let mut zeros: Vec<Freq> = if n == 1 {
        vec![Freq::from_integer(0)]
    } else {
        (1..n)
            .filter(|&i| gcd(i as u64, n as u64) == 1)
            .map(|i| {
                let f = Freq::new(i, n);
                f.min(Freq::from_integer(1) - f)
            })
            .collect()
    };
    zeros.sort();
    zeros.dedup();
    ZeroSet { q, zeros }
}

/// Default share of a CP's zeros that must land in folding bands.
pub fn default_threshold() -> Ratio<i64> {
    Ratio::new(1, 5)
}

/// Whether `q` qualifies for `spec`: no zero strictly below the cutoff, and
/// at least `threshold` of its folded zeros inside some closed folding band.
pub fn is_eligible(q: CpIndex, spec: &DesignSpec, threshold: Ratio<i64>) -> bool {
    if q.is_degenerate() {
        return false;
    }
    let zs = zero_set(q);
    if zs.zeros.iter().any(|&z| z < spec.cutoff) {
        return false;
    }
    let bands = spec.folding_bands();
    let hits = zs
        .zeros
        .iter()
        .filter(|&&z| bands.iter().any(|b| b.contains(z)))
        .count() as i64;
    Ratio::from_integer(hits) >= threshold * zs.zeros.len() as i64
}

/// Eligible indices in `2..=104`, ascending, with the default 20% threshold.
pub fn eligible_set(spec: &DesignSpec) -> Vec<CpIndex> {
    eligible_set_with(spec, default_threshold())
}

pub fn eligible_set_with(spec: &DesignSpec, threshold: Ratio<i64>) -> Vec<CpIndex> {
    (2..=MAX_INDEX)
        .map(|q| CpIndex::new(q).expect("in range"))
        .filter(|&q| is_eligible(q, spec, threshold))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(q: u32) -> CpIndex {
        CpIndex::new(q).unwrap()
    }

    #[test]
    fn zero_sets() {
        assert_eq!(zero_set(idx(4)).zeros, vec![Freq::new(1, 4)]);
        assert_eq!(
            zero_set(idx(11)).zeros,
            (1..=5).map(|i| Freq::new(i, 11)).collect::<Vec<_>>()
        );
        assert_eq!(
            zero_set(idx(64)).zeros,
            (0..16).map(|i| Freq::new(2 * i + 1, 64)).collect::<Vec<_>>()
        );
        let one = zero_set(idx(1));
        assert!(one.is_degenerate());
        assert_eq!(one.zeros, vec![Freq::from_integer(0)]);
    }

    #[test]
    fn unfolded_count_is_totient() {
        use crate::cyclotomic::totient;
        for q in CpIndex::all().skip(2) {
            let zs = zero_set(q);
            // every folded zero in (0, 1/2) stands for a conjugate pair
            let unfolded: u64 = zs
                .zeros
                .iter()
                .map(|&z| if z == Freq::new(1, 2) { 1 } else { 2 })
                .sum();
            assert_eq!(unfolded, totient(q.get() as u64).unwrap(), "q={q}");
        }
    }

    #[test]
    fn d8_boundary_cases() {
        let spec = DesignSpec::new(8, 4, 1.0, 50.0).unwrap();
        let t = default_threshold();
        assert!(!is_eligible(idx(5), &spec, t));
        // only 4/11 lands in a band: exactly 1 of 5 zeros
        assert!(is_eligible(idx(11), &spec, t));
        assert!(!is_eligible(idx(11), &spec, Ratio::new(21, 100)));
        // zero exactly at the cutoff is allowed, one below it is not
        assert!(is_eligible(idx(64), &spec, t));
        assert!(!is_eligible(idx(65), &spec, t));
        assert!(!is_eligible(idx(1), &spec, t));
    }

    #[test]
    fn larger_residual_never_loses_a_cp_to_the_passband_rule() {
        for d in [4u32, 8, 16] {
            for nu in 2..6 {
                let a = DesignSpec::new(d, nu, 1.0, 50.0).unwrap();
                let b = DesignSpec::new(d, nu + 1, 1.0, 50.0).unwrap();
                for q in CpIndex::all().skip(1) {
                    let clear = |s: &DesignSpec| zero_set(q).zeros.iter().all(|&z| z >= s.cutoff);
                    if clear(&a) {
                        assert!(clear(&b), "d={d} nu={nu} q={q}");
                    }
                }
            }
        }
    }
}
