//! Cubic residue symbols and the family of cubic characters.

pub mod family;
pub mod residue;
pub mod symbol;
pub mod value;

pub use family::{chi_eval, enumerate_family, is_family_member, FamilyElement};
pub use residue::ResidueRing;
pub use symbol::{cubic_symbol, cubic_symbol_fast, supplementary_law, SupplementaryLaw};
pub use value::CubicValue;
