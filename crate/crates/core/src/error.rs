use thiserror::Error;

use crate::model::MeanField;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or thermodynamic parameter violated its invariant.
    #[error("{0}")]
    InvalidParameter(String),

    /// The operation is only defined for degenerate ground states (delta = 0).
    #[error("operation requires delta = 0, got delta = {0}")]
    NonzeroDelta(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("refinement did not converge from seed {seed:?}; last iterate {last:?}")]
    NotConverged { seed: MeanField, last: MeanField },

    /// Both order parameters exceed the classification tolerance at a global
    /// minimum. Stationarity forbids this, so it points at a bug or at
    /// pathological parameters.
    #[error("both modes active at (y1, y2) = ({y1}, {y2})")]
    BothModesActive { y1: f64, y2: f64 },

    #[error("no transition in bracket [{lo}, {hi}]")]
    NoTransition { lo: f64, hi: f64 },

    #[error("at {coords}: {source}")]
    AtNode {
        coords: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
