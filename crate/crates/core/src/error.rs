use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the domain of an operation.
    Domain(&'static str),
    /// Two eigenvalue pairs too close to separate E from F.
    DegenerateSplitting { gap: f64 },
    Singular(&'static str),
    /// Boundary samples not resolved by the grid.
    Resolution { nyquist_fraction: f64 },
    /// Neumann or conjugation data with nonzero period.
    PeriodObstruction { period: f64 },
    BoundaryMismatch(&'static str),
    NonTransverse { index: usize, value: f64 },
    /// Pullbacks of α on the two sides share a sign.
    SignViolation { index: usize, value: f64 },
    OffCharacteristic { defect: f64 },
    TierViolation(&'static str),
    NonImmersed { min: f64 },
    NotTotallyReal { index: usize },
    InsufficientRings(usize),
    DegenerateGrid,
    Guard(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::DegenerateSplitting { gap } => write!(f, "degenerate splitting (gap {gap:e})"),
            Error::Singular(s) => write!(f, "singular: {s}"),
            Error::Resolution { nyquist_fraction } => {
                write!(f, "boundary data under-resolved (nyquist fraction {nyquist_fraction:e})")
            }
            Error::PeriodObstruction { period } => write!(f, "period obstruction ({period:e})"),
            Error::BoundaryMismatch(s) => write!(f, "boundary mismatch: {s}"),
            Error::NonTransverse { index, value } => {
                write!(f, "non-transverse crossing at sample {index} ({value:e})")
            }
            Error::SignViolation { index, value } => {
                write!(f, "gap function not positive at sample {index} ({value:e})")
            }
            Error::OffCharacteristic { defect } => {
                write!(f, "marker value off the characteristic ({defect:e})")
            }
            Error::TierViolation(s) => write!(f, "tier violation: {s}"),
            Error::NonImmersed { min } => write!(f, "non-immersed boundary (min {min:e})"),
            Error::NotTotallyReal { index } => write!(f, "plane {index} is not totally real"),
            Error::InsufficientRings(n) => write!(f, "need at least 3 rings, got {n}"),
            Error::DegenerateGrid => write!(f, "degenerate grid"),
            Error::Guard(s) => write!(f, "numerical guard: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
