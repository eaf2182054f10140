//! Solver targets: capability declarations, loading a supported model into
//! matrix form, and a reference dense LP solver.

mod capabilities;
mod load;
mod simplex;

use thiserror::Error;

use crate::bridges::NodeKey;
use crate::model::ModelError;

pub use capabilities::{builtin_capabilities, parse_pair, Capabilities, BUILTIN_TARGETS};
pub use load::{
    load, ConicForm, CountEntry, CountReport, LinearForm, Loaded, LoadedForm, RowSense, VariableCone,
};
pub use simplex::{solve_lp, SolveResult, SolveStatus};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TargetError {
    #[error("unknown target \"{0}\"")]
    UnknownTarget(String),
    #[error("invalid capabilities file: {0}")]
    CapabilitiesFile(String),
    #[error("unsupported: {0}")]
    Unsupported(NodeKey),
    #[error("unsupported for the reference solver: {0}")]
    UnsupportedForReferenceSolver(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
