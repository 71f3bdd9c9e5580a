//! Number fields, their elements, matrices over them, and triangularization
//! of abelian matrix groups.

pub mod field;
pub mod matrix;
pub mod roots;
pub mod triangularize;

pub use field::{is_root_of_unity, FieldElement, NumberField};
pub use matrix::{GroupDescription, Matrix, Vector};
pub use roots::{factor_over_field, norm_poly, FieldFactorization, KPoly};
pub use triangularize::{common_eigenvector, extend_by_rational_root, triangularize_abelian, CommonEigenvector};

/// Characteristic polynomial det(xI − M).
pub fn char_poly(m: &Matrix) -> KPoly {
    m.char_poly()
}
