use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("h* coefficient {index} is negative ({value})")]
    NegativeHStar { index: usize, value: String },
    #[error("h* coefficient {index} is not an integer ({value})")]
    NonInteger { index: usize, value: String },
    #[error("polynomial is not palindromic at degree {degree}")]
    NotPalindromic { degree: usize },
    #[error("cover relations contain a cycle through element {0}")]
    CycleDetected(usize),
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("size guard exceeded: {what} ({requested} > {limit})")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("subset {0:?} is not a poset ideal")]
    NotAnIdeal(Vec<usize>),
    #[error("poset is not naturally labeled")]
    NotNaturallyLabeled,
    #[error("invalid left enriched partition: {0}")]
    InvalidPartition(String),
    #[error("point {0:?} lies outside the dilated enriched chain polytope")]
    PointOutsidePolytope(Vec<i64>),
    #[error("gamma coefficient {index} is negative ({value})")]
    GammaNegative { index: usize, value: String },
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("binomial {0} is not in the toric ideal (images differ)")]
    ImageMismatch(String),
    #[error("weight system is infeasible: {0}")]
    Infeasible(String),
    #[error("simplex {face} has determinant {det}")]
    NonUnimodularSimplex { face: String, det: i64 },
    #[error("face count mismatch: expected {expected}, found {found}")]
    FaceCountMismatch { expected: u64, found: u64 },
    #[error("cover reduction produced a malformed decorated permutation: {0}")]
    MalformedResult(String),
}

impl Error {
    /// Alarm-class errors signal a broken identity rather than bad input.
    pub fn is_alarm(&self) -> bool {
        matches!(
            self,
            Error::NegativeHStar { .. }
                | Error::NonInteger { .. }
                | Error::GammaNegative { .. }
                | Error::IdentityViolation(_)
                | Error::ImageMismatch(_)
                | Error::Infeasible(_)
                | Error::NonUnimodularSimplex { .. }
                | Error::FaceCountMismatch { .. }
                | Error::MalformedResult(_)
        )
    }
}
