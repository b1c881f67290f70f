use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the function.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },
    /// A structural contract between arguments does not hold.
    #[error("contract violated: {0}")]
    Contract(&'static str),
    /// Two series that must be aligned have different lengths.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// NRMSD is undefined for a profile whose mean is zero.
    #[error("normalized RMSD undefined: profile mean is zero")]
    ZeroMean,
    /// The constraints admit no positive secrecy rate.
    #[error("infeasible: leakage rate {r_e} is not below the QoS rate ceiling {r_b_max}")]
    Infeasible { r_e: f64, r_b_max: f64 },
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }
}
