//! Residue field F (GF(q) or GF(q)(y)) and K = F((pi)) restricted to
//! Laurent polynomials.

pub mod gf;
mod laurent;
pub mod poly;
mod residue;

pub use gf::GaloisField;
pub use laurent::{LaurentElem, LaurentRing};
pub use residue::{FieldConfig, ResidueElem, ResidueField, ResidueKind};
