//! MathOptFormat (`.mof.json`): reading, writing, and validating.
//!
//! Field spellings used for set parameters:
//!
//! | set | fields |
//! |-----|--------|
//! | `LessThan` | `upper` |
//! | `GreaterThan` | `lower` |
//! | `EqualTo` | `value` |
//! | `Interval`, `Semiinteger`, `Semicontinuous` | `lower`, `upper` |
//! | `Zeros` ... `RelativeEntropyCone`, `Complements` | `dimension` |
//! | `PowerCone`, `DualPowerCone` | `exponent` |
//! | PSD / root-det / log-det cones | `side_dimension` |
//! | `NormSpectralCone`, `NormNuclearCone` | `row_dim`, `column_dim` |
//! | `IndicatorSet` | `activate_on` (`"zero"`/`"one"`), `set` |
//! | `SOS1`, `SOS2` | `weights` |
//!
//! Vector function terms carry a 1-based `output_index`.

mod read;
mod write;

use std::fmt;

use thiserror::Error;

pub use read::{read_model, read_value, validate, validate_value};
pub use write::{write_model, write_value};

pub const VERSION_MAJOR: u64 = 0;
pub const VERSION_MINOR: u64 = 5;

/// One schema or semantic violation, located by a JSON path such as
/// `constraints[1].set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MofError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),
    #[error("unsupported MathOptFormat version {major}.{minor}")]
    VersionUnsupported { major: u64, minor: u64 },
    #[error("duplicate variable name \"{0}\"")]
    DuplicateName(String),
}
