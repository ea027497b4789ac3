use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic_poly, CpIndex, IntPoly};

/// A filter `prod_q C_q(z)^m_q`: cyclotomic indices with positive orders,
/// sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Cascade {
    terms: Vec<(CpIndex, u32)>,
}

impl Cascade {
    /// Builds a cascade, merging repeated indices and dropping zero orders.
    pub fn new<I: IntoIterator<Item = (CpIndex, u32)>>(terms: I) -> Self {
        let mut v: Vec<(CpIndex, u32)> = Vec::new();
        for (q, m) in terms {
            match v.iter_mut().find(|(p, _)| *p == q) {
                Some(slot) => slot.1 += m,
                None => v.push((q, m)),
            }
        }
        v.retain(|&(_, m)| m > 0);
        v.sort();
        Cascade { terms: v }
    }

    /// Convenience for tests and fixtures: `[(2, 2), (4, 3), (8, 3)]`.
    ///
    /// Panics on an index outside `1..=104`.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Cascade::new(
            pairs
                .iter()
                .map(|&(q, m)| (CpIndex::new(q).expect("valid cyclotomic index"), m)),
        )
    }

    /// Orders aligned with an index list, as the optimizer reports them.
    pub fn from_orders(indices: &[CpIndex], orders: &[u32]) -> Self {
        assert_eq!(indices.len(), orders.len(), "orders must align with indices");
        Cascade::new(indices.iter().copied().zip(orders.iter().copied()))
    }

    pub fn terms(&self) -> &[(CpIndex, u32)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order_of(&self, q: CpIndex) -> u32 {
        self.terms
            .iter()
            .find(|(p, _)| *p == q)
            .map_or(0, |&(_, m)| m)
    }

    /// Orders aligned with `indices` (zero where absent).
    pub fn orders_for(&self, indices: &[CpIndex]) -> Vec<u32> {
        indices.iter().map(|&q| self.order_of(q)).collect()
    }

    /// Full impulse response by exact convolution of every factor.
    pub fn impulse_response(&self) -> IntPoly {
        self.terms.iter().fold(IntPoly::one(), |acc, &(q, m)| {
            &acc * &cyclotomic_poly(q).pow(m)
        })
    }
}

/// `C_2^2 C_4^3 C_8^3`; the empty cascade prints as `1`.
impl fmt::Display for Cascade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        for (i, (q, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "C_{q}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_sorts() {
        let c = Cascade::from_pairs(&[(8, 3), (2, 1), (4, 0), (2, 1)]);
        assert_eq!(c.to_string(), "C_2^2 C_8^3");
        assert_eq!(c.order_of(CpIndex::new(4).unwrap()), 0);
    }

    #[test]
    fn impulse_length() {
        let h = Cascade::from_pairs(&[(2, 2), (4, 3), (8, 3)]).impulse_response();
        assert_eq!(h.len(), 21);
        assert_eq!(h.eval_at_one(), 256);
        assert_eq!(Cascade::default().impulse_response(), IntPoly::one());
    }
}
