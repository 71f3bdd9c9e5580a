//! Exact construction and verification of certificates that separate an
//! element of a finitely generated linear group from an abelian
//! unipotent-free subgroup, by homomorphisms onto finite matrix groups.

pub mod chevalley;
pub mod error;
pub mod exact;
pub mod format;
pub mod nfield;
pub mod residue;
pub mod separator;
pub mod units;

pub use error::{Error, Result};
pub use exact::{IntPoly, Integer, Rational};
pub use nfield::{FieldElement, GroupDescription, Matrix, NumberField};
pub use residue::{FiniteMatrix, FiniteRing, HomDescription, ResidueMap};
pub use separator::{separate_abelian, verify_certificate, Config, Separation, SeparationCertificate, Verification};
pub use units::UnitList;
