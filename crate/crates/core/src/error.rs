use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which structural check a computed module failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    FrobeniusAfterVerschiebung,
    VerschiebungAfterFrobenius,
    FrobeniusRank { expected: usize, found: usize },
    VerschiebungRank { expected: usize, found: usize },
    ImageFrobeniusIsKernelVerschiebung,
    ImageVerschiebungIsKernelFrobenius,
    FrobeniusKillsTau,
    VerschiebungEtaRowsZero,
    HasseWittBlock,
    ANumberRoutes { kernels: usize, hasse_witt: usize },
    PRankRoutes { psi: usize, stable_rank: usize },
    ElementarySlope { from_dim: usize, to_dim: usize },
    ElementarySequence,
    Shape,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::FrobeniusAfterVerschiebung => write!(f, "FV != 0"),
            Axiom::VerschiebungAfterFrobenius => write!(f, "VF != 0"),
            Axiom::FrobeniusRank { expected, found } => {
                write!(f, "rank F = {found}, expected {expected}")
            }
            Axiom::VerschiebungRank { expected, found } => {
                write!(f, "rank V = {found}, expected {expected}")
            }
            Axiom::ImageFrobeniusIsKernelVerschiebung => write!(f, "im F != ker V"),
            Axiom::ImageVerschiebungIsKernelFrobenius => write!(f, "im V != ker F"),
            Axiom::FrobeniusKillsTau => write!(f, "F is nonzero on a tau basis vector"),
            Axiom::VerschiebungEtaRowsZero => write!(f, "V has a nonzero eta output row"),
            Axiom::HasseWittBlock => write!(f, "matrix block disagrees with the Hasse-Witt matrix"),
            Axiom::ANumberRoutes { kernels, hasse_witt } => write!(
                f,
                "a-number routes disagree: dim(ker F ∩ ker V) = {kernels}, g - rank HW = {hasse_witt}"
            ),
            Axiom::PRankRoutes { psi, stable_rank } => write!(
                f,
                "p-rank routes disagree: from psi {psi}, stable rank {stable_rank}"
            ),
            Axiom::ElementarySlope { from_dim, to_dim } => write!(
                f,
                "dim V(N) has slope outside {{0,1}} between filtration dims {from_dim} and {to_dim}"
            ),
            Axiom::ElementarySequence => write!(f, "psi is not an elementary sequence"),
            Axiom::Shape => write!(f, "matrices have the wrong shape"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus {0} exceeds the supported word size")]
    ModulusTooLarge(u64),
    #[error("operands live in different fields")]
    MixedField,
    #[error("affine substitution needs alpha != 0 and gamma != 0")]
    BadTransform,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus is not a monic irreducible polynomial")]
    NotIrreducible,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("axiom violation: {0}")]
    AxiomViolation(Axiom),
    #[error("canonical filtration is not a chain")]
    NotAChain,
    #[error("filtration did not stabilize within {0} rounds")]
    FiltrationDiverged(usize),
    #[error("inexact division assembling the L-polynomial at degree {0}")]
    InexactDivision(usize),
    #[error("point count {count} over F_{q} violates the Weil bound")]
    WeilBound { q: u64, count: u64 },
    #[error("field of size {0} is too large to enumerate")]
    TooLarge(u64),
    #[error("invalid target sequence: {0}")]
    InvalidTarget(String),
    #[error("no curve with the requested type was found")]
    NotFound,
    #[error("curve {coeffs:?} over F_{p}: {source}")]
    AtCurve {
        p: u64,
        coeffs: Vec<u64>,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Unwraps any curve context down to the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtCurve { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures that indicate an internal formula regression rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self.root(),
            Error::AxiomViolation(_)
                | Error::NotAChain
                | Error::FiltrationDiverged(_)
                | Error::InexactDivision(_)
                | Error::WeilBound { .. }
        )
    }
}
