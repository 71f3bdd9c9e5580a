use thiserror::Error;

/// Every failure mode of the library.
///
/// Variants fall into three families that the command line front end maps
/// onto distinct exit codes: mathematical negatives (the input is outside
/// the hypotheses, or the question has a definite "no" answer), resource
/// exhaustion (a search bound or cap was hit), and malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("polynomial {0} is reducible over the rationals")]
    Reducible(String),
    #[error("field towers are only supported over the rationals")]
    UnsupportedTower,
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("eigenvalues leave the field; irreducible factor {factor}")]
    NeedsFieldExtension {
        /// Coefficients (ascending) of the offending factor, each given by its
        /// coordinates in the power basis of the current field.
        coefficients: Vec<Vec<String>>,
        factor: String,
    },
    #[error("residue map undefined: {0}")]
    ResidueUndefined(String),
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("homomorphisms are defined on different fields")]
    MixedFields,
    #[error("relation search bound {0} is insufficient to certify the unit structure")]
    BoundExceeded(u32),
    #[error("every unit is a root of unity")]
    AllTorsion,
    #[error("element does not decompose within the complement product: {0}")]
    NotInProduct(String),
    #[error("no admissible modulus up to {0}")]
    ModulusNotFound(u64),
    #[error("discrete logarithm failed: {0}")]
    NotInLattice(String),
    #[error("certificate failed verification after enlarging the ambient unit group")]
    FallbackExhausted,
    #[error("coset representative {0} places the target inside the subgroup")]
    CosetMembership(usize),
    #[error("target lies in the subgroup")]
    InSubgroup,
    #[error("subgroup contains the non-trivial unipotent element {witness}")]
    NotUnipotentFree { witness: String },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Resource-exhaustion failures, as opposed to mathematical negatives.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded(_)
                | Error::BoundExceeded(_)
                | Error::ModulusNotFound(_)
                | Error::FallbackExhausted
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
