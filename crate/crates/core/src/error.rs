use thiserror::Error;

use crate::analytic::MomentOrder;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("coefficient index pair ({i},{j}) does not occur in the evolution kernel")]
    InvalidIndexPair { i: u8, j: u8 },

    #[error("moment order {order} exceeds the supported total degree {max}")]
    OrderTooHigh { order: MomentOrder, max: u32 },

    #[error("truncation must be at least 1, got {0}")]
    InvalidTruncation(usize),

    #[error(
        "moment {order} did not converge at kappa_t = {kappa_t}: tail {tail:e} vs accumulated {sum:e}"
    )]
    NonConvergence {
        order: MomentOrder,
        kappa_t: f64,
        tail: f64,
        sum: f64,
    },

    #[error("net negative power {exponent} of vanishing base {base}")]
    UnresolvedSingularity { base: &'static str, exponent: i32 },

    #[error("Fock cutoff {cutoff} leaves Poisson tail {tail:e}")]
    CutoffTooSmall { cutoff: usize, tail: f64 },

    #[error("{what}: imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidue {
        what: &'static str,
        residue: f64,
        tolerance: f64,
    },

    #[error("invalid basis selection: {0}")]
    InvalidSelection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
