//! Design toolkit for multiplier-less decimation filters built as cascades
//! of cyclotomic polynomials.

pub mod cascade;
pub mod catalog;
pub mod cyclotomic;
pub mod design;
pub mod eligibility;
pub mod error;
pub mod optimizer;
pub mod simulate;
pub mod spectrum;
pub mod synthesis;

pub use cascade::Cascade;
pub use cyclotomic::{CpIndex, Factor, IntPoly, RationalForm};
pub use design::DesignFile;
pub use error::{Error, Result};
pub use optimizer::{Solution, Status};
pub use spectrum::{DesignSpec, Freq};
