//! Architecture variants of each CP and their adder/delay counts.
//!
//! A direct form costs one adder per nonzero tap after the first and one
//! delay per power of `z^-1`. A factored form is realized as a cascade of
//! its sections, left unexpanded: each section occurrence costs one adder
//! per nonzero non-leading coefficient, and numerator and denominator share
//! one delay line, so the delays are `max(deg num, deg den)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic_poly, cyclotomic_rational, CpIndex, IntPoly, RationalForm, MAX_INDEX};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArchKind {
    Nonrecursive,
    Recursive,
}

/// How a variant was derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Derivation {
    /// Expanded polynomial, one tap per coefficient.
    Direct,
    /// Möbius-inversion product of combs.
    Mobius,
    /// Möbius form after [`RationalForm::compact`].
    Compact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ArchForm {
    Direct(IntPoly),
    Factored(RationalForm),
}

impl ArchForm {
    pub fn expand(&self) -> Result<IntPoly> {
        match self {
            ArchForm::Direct(p) => Ok(p.clone()),
            ArchForm::Factored(r) => r.expand(),
        }
    }
}

impl std::fmt::Display for ArchForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArchForm::Direct(p) => write!(f, "{p}"),
            ArchForm::Factored(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchVariant {
    pub kind: ArchKind,
    pub derivation: Derivation,
    pub form: ArchForm,
    pub adders: usize,
    pub delays: usize,
}

impl ArchVariant {
    pub fn direct(p: IntPoly) -> Self {
        ArchVariant {
            kind: ArchKind::Nonrecursive,
            derivation: Derivation::Direct,
            adders: p.nonzero_count().saturating_sub(1),
            delays: p.degree().unwrap_or(0),
            form: ArchForm::Direct(p),
        }
    }

    pub fn factored(r: RationalForm, derivation: Derivation) -> Self {
        ArchVariant {
            kind: if r.has_denominator() {
                ArchKind::Recursive
            } else {
                ArchKind::Nonrecursive
            },
            derivation,
            adders: r.adders(),
            delays: r.delays(),
            form: ArchForm::Factored(r),
        }
    }

    pub fn weighted_cost(&self, gamma: f64) -> f64 {
        self.adders as f64 + gamma * self.delays as f64
    }
}

/// Direct form, Möbius form and compacted form of `C_q`; a factored form
/// with the same kind and counts as an earlier variant is skipped.
pub fn variants(q: CpIndex) -> Vec<ArchVariant> {
    let mut out = vec![ArchVariant::direct(cyclotomic_poly(q).clone())];
    let mobius = cyclotomic_rational(q);
    let compact = mobius.compact();
    for v in [
        ArchVariant::factored(mobius, Derivation::Mobius),
        ArchVariant::factored(compact, Derivation::Compact),
    ] {
        let dup = out
            .iter()
            .any(|w| w.kind == v.kind && w.adders == v.adders && w.delays == v.delays);
        if !dup {
            out.push(v);
        }
    }
    out
}

/// Cost coefficients of one CP: the variant chosen for a given `gamma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostEntry {
    pub q: CpIndex,
    pub adders: usize,
    pub delays: usize,
    pub variant: ArchVariant,
}

impl CostEntry {
    pub fn cost(&self, gamma: f64) -> f64 {
        self.adders as f64 + gamma * self.delays as f64
    }
}

/// Variant minimizing `adders + gamma * delays`; ties go to fewer delays,
/// then to the nonrecursive variant.
pub fn best_cost(q: CpIndex, gamma: f64) -> Result<CostEntry> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!("gamma {gamma} outside [0, 1]")));
    }
    if q.is_degenerate() {
        return Err(Error::Domain("C_1 is not a usable filter section".into()));
    }
    let best = variants(q)
        .into_iter()
        .min_by(|a, b| {
            let (ca, cb) = (a.weighted_cost(gamma), b.weighted_cost(gamma));
            if (ca - cb).abs() > 1e-12 {
                return ca.partial_cmp(&cb).unwrap_or(Ordering::Equal);
            }
            a.delays.cmp(&b.delays).then(a.kind.cmp(&b.kind))
        })
        .expect("direct form always present");
    Ok(CostEntry {
        q,
        adders: best.adders,
        delays: best.delays,
        variant: best,
    })
}

/// Cost entries for every usable CP (`q = 2..=104`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub gamma: f64,
    entries: Vec<CostEntry>,
}

impl Catalog {
    pub fn build(gamma: f64) -> Result<Self> {
        let entries = (2..=MAX_INDEX)
            .map(|q| best_cost(CpIndex::new(q).expect("in range"), gamma))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { gamma, entries })
    }

    pub fn entry(&self, q: CpIndex) -> Option<&CostEntry> {
        self.entries.get((q.get() as usize).checked_sub(2)?)
    }

    pub fn entries(&self) -> &[CostEntry] {
        &self.entries
    }

    /// Weighted cost `sum_q m_q (N_a + gamma N_d)` of a cascade.
    pub fn cascade_cost(&self, cascade: &crate::Cascade) -> f64 {
        cascade
            .terms()
            .iter()
            .map(|&(q, m)| m as f64 * self.entry(q).expect("usable index").cost(self.gamma))
            .sum()
    }

    /// One row per CP: best nonrecursive and best recursive counts, plus
    /// the chosen variant.
    pub fn rows(&self) -> Vec<CatalogRow> {
        self.entries
            .iter()
            .map(|e| {
                let vs = variants(e.q);
                let pick = |kind: ArchKind| {
                    vs.iter()
                        .filter(|v| v.kind == kind)
                        .min_by_key(|v| (v.adders, v.delays))
                        .map(|v| (v.adders, v.delays))
                };
                let nonrec = pick(ArchKind::Nonrecursive).expect("direct form present");
                let rec = pick(ArchKind::Recursive);
                CatalogRow {
                    q: e.q.get(),
                    na_nonrec: nonrec.0,
                    nd_nonrec: nonrec.1,
                    na_rec: rec.map(|r| r.0),
                    nd_rec: rec.map(|r| r.1),
                    chosen: e.variant.form.to_string(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub q: u32,
    pub na_nonrec: usize,
    pub nd_nonrec: usize,
    pub na_rec: Option<usize>,
    pub nd_rec: Option<usize>,
    pub chosen: String,
}
