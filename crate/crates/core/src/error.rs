use alloc::boxed::Box;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotHermitian {
        residual: f64,
    },
    NoConvergence {
        sweeps: usize,
        off_diagonal: f64,
    },
    NegativeEigenvalue {
        value: f64,
    },
    NotNormalized {
        norm: f64,
    },
    BadTrace {
        trace: f64,
    },
    NotUnitary {
        residual: f64,
    },
    NotTracePreserving {
        residual: f64,
    },
    ProbabilitiesNotNormalized {
        sum: f64,
    },
    NegativeProbability {
        index: usize,
        value: f64,
    },
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
    },
    ImaginaryCoefficient {
        value: f64,
    },
    EmptyChannel,
    MissingRandomSource,
    /// Failure while evolving a trajectory, tagged with the step index.
    AtStep {
        step: usize,
        source: Box<Error>,
    },
    /// Failure inside one ensemble member, tagged with its index.
    InTrajectory {
        index: usize,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::AtStep { step, source: Box::new(self) }
    }

    pub(crate) fn in_trajectory(self, index: usize) -> Self {
        Error::InTrajectory { index, source: Box::new(self) }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:e})")
            }
            Error::NoConvergence { sweeps, off_diagonal } => {
                write!(f, "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")
            }
            Error::NegativeEigenvalue { value } => {
                write!(f, "operator has a negative eigenvalue {value:e}")
            }
            Error::NotNormalized { norm } => write!(f, "state vector has norm {norm}, expected 1"),
            Error::BadTrace { trace } => write!(f, "density matrix has trace {trace}, expected 1"),
            Error::NotUnitary { residual } => {
                write!(f, "operator is not unitary (residual {residual:e})")
            }
            Error::NotTracePreserving { residual } => {
                write!(f, "Kraus operators are not trace preserving (residual {residual:e})")
            }
            Error::ProbabilitiesNotNormalized { sum } => {
                write!(f, "probabilities sum to {sum}, expected 1")
            }
            Error::NegativeProbability { index, value } => {
                write!(f, "probability #{index} is negative ({value})")
            }
            Error::ParameterOutOfRange { name, value } => {
                write!(f, "parameter `{name}` out of range: {value}")
            }
            Error::ImaginaryCoefficient { value } => {
                write!(f, "Pauli coefficient has imaginary part {value:e}")
            }
            Error::EmptyChannel => write!(f, "channel has no Kraus operators"),
            Error::MissingRandomSource => {
                write!(f, "a random source is required for this Hamiltonian")
            }
            Error::AtStep { step, source } => write!(f, "at step {step}: {source}"),
            Error::InTrajectory { index, source } => write!(f, "trajectory {index}: {source}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::AtStep { source, .. } | Error::InTrajectory { source, .. } => Some(&**source),
            _ => None,
        }
    }
}
