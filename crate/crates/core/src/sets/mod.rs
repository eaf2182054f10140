//! The set catalog: one-dimensional sets, cones, matrix cones, and sets
//! with combinatorial structure, plus a numerical membership oracle.

mod matrix;
mod membership;

use std::fmt;

use thiserror::Error;

pub use matrix::{square_to_triangle, triangle_to_square};
pub use membership::{complements_membership, membership};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SetError {
    #[error("point has length {point} but set has dimension {set}")]
    DimensionMismatch { point: usize, set: usize },
    #[error("matrix is not symmetric within tolerance")]
    AsymmetricInput,
    #[error("{0}")]
    InvalidParameter(String),
}

/// Whether an indicator constraint activates on `y = 0` or `y = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActivationValue {
    Zero,
    One,
}

impl ActivationValue {
    pub fn value(self) -> f64 {
        match self {
            ActivationValue::Zero => 0.0,
            ActivationValue::One => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ActivationValue::Zero => "zero",
            ActivationValue::One => "one",
        }
    }
}

/// A concrete member of the set catalog, with its parameters.
///
/// Vector sets carry their total ambient dimension, e.g. a second-order cone
/// over `(t, x)` with `x ∈ ℝ³` has `dimension = 4`.
#[derive(Clone, Debug, PartialEq)]
pub enum SetSpec {
    LessThan { upper: f64 },
    GreaterThan { lower: f64 },
    EqualTo { value: f64 },
    Interval { lower: f64, upper: f64 },
    Integer,
    ZeroOne,
    Semiinteger { lower: f64, upper: f64 },
    Semicontinuous { lower: f64, upper: f64 },
    Zeros { dimension: usize },
    Reals { dimension: usize },
    Nonpositives { dimension: usize },
    Nonnegatives { dimension: usize },
    SecondOrderCone { dimension: usize },
    RotatedSecondOrderCone { dimension: usize },
    ExponentialCone,
    DualExponentialCone,
    GeometricMeanCone { dimension: usize },
    PowerCone { exponent: f64 },
    DualPowerCone { exponent: f64 },
    NormOneCone { dimension: usize },
    NormInfinityCone { dimension: usize },
    RelativeEntropyCone { dimension: usize },
    PositiveSemidefiniteConeTriangle { side_dimension: usize },
    PositiveSemidefiniteConeSquare { side_dimension: usize },
    RootDetConeTriangle { side_dimension: usize },
    RootDetConeSquare { side_dimension: usize },
    LogDetConeTriangle { side_dimension: usize },
    LogDetConeSquare { side_dimension: usize },
    NormSpectralCone { row_dim: usize, column_dim: usize },
    NormNuclearCone { row_dim: usize, column_dim: usize },
    Complements { dimension: usize },
    IndicatorSet { activate_on: ActivationValue, set: Box<SetSpec> },
    Sos1 { weights: Vec<f64> },
    Sos2 { weights: Vec<f64> },
}

/// Type tag of a [`SetSpec`], without parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetType {
    LessThan,
    GreaterThan,
    EqualTo,
    Interval,
    Integer,
    ZeroOne,
    Semiinteger,
    Semicontinuous,
    Zeros,
    Reals,
    Nonpositives,
    Nonnegatives,
    SecondOrderCone,
    RotatedSecondOrderCone,
    ExponentialCone,
    DualExponentialCone,
    GeometricMeanCone,
    PowerCone,
    DualPowerCone,
    NormOneCone,
    NormInfinityCone,
    RelativeEntropyCone,
    PositiveSemidefiniteConeTriangle,
    PositiveSemidefiniteConeSquare,
    RootDetConeTriangle,
    RootDetConeSquare,
    LogDetConeTriangle,
    LogDetConeSquare,
    NormSpectralCone,
    NormNuclearCone,
    Complements,
    IndicatorSet,
    Sos1,
    Sos2,
}

impl SetType {
    pub const ALL: [SetType; 34] = [
        SetType::LessThan,
        SetType::GreaterThan,
        SetType::EqualTo,
        SetType::Interval,
        SetType::Integer,
        SetType::ZeroOne,
        SetType::Semiinteger,
        SetType::Semicontinuous,
        SetType::Zeros,
        SetType::Reals,
        SetType::Nonpositives,
        SetType::Nonnegatives,
        SetType::SecondOrderCone,
        SetType::RotatedSecondOrderCone,
        SetType::ExponentialCone,
        SetType::DualExponentialCone,
        SetType::GeometricMeanCone,
        SetType::PowerCone,
        SetType::DualPowerCone,
        SetType::NormOneCone,
        SetType::NormInfinityCone,
        SetType::RelativeEntropyCone,
        SetType::PositiveSemidefiniteConeTriangle,
        SetType::PositiveSemidefiniteConeSquare,
        SetType::RootDetConeTriangle,
        SetType::RootDetConeSquare,
        SetType::LogDetConeTriangle,
        SetType::LogDetConeSquare,
        SetType::NormSpectralCone,
        SetType::NormNuclearCone,
        SetType::Complements,
        SetType::IndicatorSet,
        SetType::Sos1,
        SetType::Sos2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetType::LessThan => "LessThan",
            SetType::GreaterThan => "GreaterThan",
            SetType::EqualTo => "EqualTo",
            SetType::Interval => "Interval",
            SetType::Integer => "Integer",
            SetType::ZeroOne => "ZeroOne",
            SetType::Semiinteger => "Semiinteger",
            SetType::Semicontinuous => "Semicontinuous",
            SetType::Zeros => "Zeros",
            SetType::Reals => "Reals",
            SetType::Nonpositives => "Nonpositives",
            SetType::Nonnegatives => "Nonnegatives",
            SetType::SecondOrderCone => "SecondOrderCone",
            SetType::RotatedSecondOrderCone => "RotatedSecondOrderCone",
            SetType::ExponentialCone => "ExponentialCone",
            SetType::DualExponentialCone => "DualExponentialCone",
            SetType::GeometricMeanCone => "GeometricMeanCone",
            SetType::PowerCone => "PowerCone",
            SetType::DualPowerCone => "DualPowerCone",
            SetType::NormOneCone => "NormOneCone",
            SetType::NormInfinityCone => "NormInfinityCone",
            SetType::RelativeEntropyCone => "RelativeEntropyCone",
            SetType::PositiveSemidefiniteConeTriangle => "PositiveSemidefiniteConeTriangle",
            SetType::PositiveSemidefiniteConeSquare => "PositiveSemidefiniteConeSquare",
            SetType::RootDetConeTriangle => "RootDetConeTriangle",
            SetType::RootDetConeSquare => "RootDetConeSquare",
            SetType::LogDetConeTriangle => "LogDetConeTriangle",
            SetType::LogDetConeSquare => "LogDetConeSquare",
            SetType::NormSpectralCone => "NormSpectralCone",
            SetType::NormNuclearCone => "NormNuclearCone",
            SetType::Complements => "Complements",
            SetType::IndicatorSet => "IndicatorSet",
            SetType::Sos1 => "SOS1",
            SetType::Sos2 => "SOS2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    /// One-dimensional sets (paired with scalar functions).
    pub fn is_scalar(self) -> bool {
        matches!(
            self,
            SetType::LessThan
                | SetType::GreaterThan
                | SetType::EqualTo
                | SetType::Interval
                | SetType::Integer
                | SetType::ZeroOne
                | SetType::Semiinteger
                | SetType::Semicontinuous
        )
    }
}

impl fmt::Display for SetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn triangle_len(d: usize) -> usize {
    d * (d + 1) / 2
}

fn invalid(msg: impl Into<String>) -> SetError {
    SetError::InvalidParameter(msg.into())
}

fn finite(name: &str, value: f64) -> Result<(), SetError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite")))
    }
}

fn ordered_bounds(lower: f64, upper: f64) -> Result<(), SetError> {
    finite("lower", lower)?;
    finite("upper", upper)?;
    if lower <= upper {
        Ok(())
    } else {
        Err(invalid(format!("lower bound {lower} exceeds upper bound {upper}")))
    }
}

fn at_least(name: &str, value: usize, min: usize) -> Result<(), SetError> {
    if value >= min {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be at least {min}, got {value}")))
    }
}

impl SetSpec {
    pub fn set_type(&self) -> SetType {
        match self {
            SetSpec::LessThan { .. } => SetType::LessThan,
            SetSpec::GreaterThan { .. } => SetType::GreaterThan,
            SetSpec::EqualTo { .. } => SetType::EqualTo,
            SetSpec::Interval { .. } => SetType::Interval,
            SetSpec::Integer => SetType::Integer,
            SetSpec::ZeroOne => SetType::ZeroOne,
            SetSpec::Semiinteger { .. } => SetType::Semiinteger,
            SetSpec::Semicontinuous { .. } => SetType::Semicontinuous,
            SetSpec::Zeros { .. } => SetType::Zeros,
            SetSpec::Reals { .. } => SetType::Reals,
            SetSpec::Nonpositives { .. } => SetType::Nonpositives,
            SetSpec::Nonnegatives { .. } => SetType::Nonnegatives,
            SetSpec::SecondOrderCone { .. } => SetType::SecondOrderCone,
            SetSpec::RotatedSecondOrderCone { .. } => SetType::RotatedSecondOrderCone,
            SetSpec::ExponentialCone => SetType::ExponentialCone,
            SetSpec::DualExponentialCone => SetType::DualExponentialCone,
            SetSpec::GeometricMeanCone { .. } => SetType::GeometricMeanCone,
            SetSpec::PowerCone { .. } => SetType::PowerCone,
            SetSpec::DualPowerCone { .. } => SetType::DualPowerCone,
            SetSpec::NormOneCone { .. } => SetType::NormOneCone,
            SetSpec::NormInfinityCone { .. } => SetType::NormInfinityCone,
            SetSpec::RelativeEntropyCone { .. } => SetType::RelativeEntropyCone,
            SetSpec::PositiveSemidefiniteConeTriangle { .. } => SetType::PositiveSemidefiniteConeTriangle,
            SetSpec::PositiveSemidefiniteConeSquare { .. } => SetType::PositiveSemidefiniteConeSquare,
            SetSpec::RootDetConeTriangle { .. } => SetType::RootDetConeTriangle,
            SetSpec::RootDetConeSquare { .. } => SetType::RootDetConeSquare,
            SetSpec::LogDetConeTriangle { .. } => SetType::LogDetConeTriangle,
            SetSpec::LogDetConeSquare { .. } => SetType::LogDetConeSquare,
            SetSpec::NormSpectralCone { .. } => SetType::NormSpectralCone,
            SetSpec::NormNuclearCone { .. } => SetType::NormNuclearCone,
            SetSpec::Complements { .. } => SetType::Complements,
            SetSpec::IndicatorSet { .. } => SetType::IndicatorSet,
            SetSpec::Sos1 { .. } => SetType::Sos1,
            SetSpec::Sos2 { .. } => SetType::Sos2,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.set_type().is_scalar()
    }

    /// Ambient dimension of members of the set.
    pub fn dimension(&self) -> usize {
        match self {
            SetSpec::LessThan { .. }
            | SetSpec::GreaterThan { .. }
            | SetSpec::EqualTo { .. }
            | SetSpec::Interval { .. }
            | SetSpec::Integer
            | SetSpec::ZeroOne
            | SetSpec::Semiinteger { .. }
            | SetSpec::Semicontinuous { .. } => 1,
            SetSpec::ExponentialCone
            | SetSpec::DualExponentialCone
            | SetSpec::PowerCone { .. }
            | SetSpec::DualPowerCone { .. } => 3,
            SetSpec::Zeros { dimension }
            | SetSpec::Reals { dimension }
            | SetSpec::Nonpositives { dimension }
            | SetSpec::Nonnegatives { dimension }
            | SetSpec::SecondOrderCone { dimension }
            | SetSpec::RotatedSecondOrderCone { dimension }
            | SetSpec::GeometricMeanCone { dimension }
            | SetSpec::NormOneCone { dimension }
            | SetSpec::NormInfinityCone { dimension }
            | SetSpec::RelativeEntropyCone { dimension }
            | SetSpec::Complements { dimension } => *dimension,
            SetSpec::PositiveSemidefiniteConeTriangle { side_dimension } => triangle_len(*side_dimension),
            SetSpec::PositiveSemidefiniteConeSquare { side_dimension } => side_dimension * side_dimension,
            SetSpec::RootDetConeTriangle { side_dimension } => 1 + triangle_len(*side_dimension),
            SetSpec::RootDetConeSquare { side_dimension } => 1 + side_dimension * side_dimension,
            SetSpec::LogDetConeTriangle { side_dimension } => 2 + triangle_len(*side_dimension),
            SetSpec::LogDetConeSquare { side_dimension } => 2 + side_dimension * side_dimension,
            SetSpec::NormSpectralCone { row_dim, column_dim } | SetSpec::NormNuclearCone { row_dim, column_dim } => {
                1 + row_dim * column_dim
            }
            SetSpec::IndicatorSet { set, .. } => 1 + set.dimension(),
            SetSpec::Sos1 { weights } | SetSpec::Sos2 { weights } => weights.len(),
        }
    }

    /// Check parameter constraints (finite values, ordered bounds, minimum
    /// dimensions, distinct SOS weights, exponent in `(0, 1)`).
    pub fn validate(&self) -> Result<(), SetError> {
        match self {
            SetSpec::LessThan { upper } => finite("upper", *upper),
            SetSpec::GreaterThan { lower } => finite("lower", *lower),
            SetSpec::EqualTo { value } => finite("value", *value),
            SetSpec::Interval { lower, upper } | SetSpec::Semicontinuous { lower, upper } => {
                ordered_bounds(*lower, *upper)
            }
            SetSpec::Semiinteger { lower, upper } => {
                ordered_bounds(*lower, *upper)?;
                if lower.fract() != 0.0 || upper.fract() != 0.0 {
                    return Err(invalid("Semiinteger bounds must be integers"));
                }
                Ok(())
            }
            SetSpec::Integer | SetSpec::ZeroOne | SetSpec::ExponentialCone | SetSpec::DualExponentialCone => Ok(()),
            SetSpec::Zeros { dimension }
            | SetSpec::Reals { dimension }
            | SetSpec::Nonpositives { dimension }
            | SetSpec::Nonnegatives { dimension }
            | SetSpec::SecondOrderCone { dimension }
            | SetSpec::NormOneCone { dimension }
            | SetSpec::NormInfinityCone { dimension } => at_least("dimension", *dimension, 1),
            SetSpec::RotatedSecondOrderCone { dimension } | SetSpec::GeometricMeanCone { dimension } => {
                at_least("dimension", *dimension, 2)
            }
            SetSpec::RelativeEntropyCone { dimension } => {
                at_least("dimension", *dimension, 3)?;
                if dimension % 2 == 1 {
                    Ok(())
                } else {
                    Err(invalid("RelativeEntropyCone dimension must be odd"))
                }
            }
            SetSpec::Complements { dimension } => {
                at_least("dimension", *dimension, 2)?;
                if dimension % 2 == 0 {
                    Ok(())
                } else {
                    Err(invalid("Complements dimension must be even"))
                }
            }
            SetSpec::PowerCone { exponent } | SetSpec::DualPowerCone { exponent } => {
                if exponent.is_finite() && *exponent > 0.0 && *exponent < 1.0 {
                    Ok(())
                } else {
                    Err(invalid(format!("exponent must lie in (0, 1), got {exponent}")))
                }
            }
            SetSpec::PositiveSemidefiniteConeTriangle { side_dimension }
            | SetSpec::PositiveSemidefiniteConeSquare { side_dimension }
            | SetSpec::RootDetConeTriangle { side_dimension }
            | SetSpec::RootDetConeSquare { side_dimension }
            | SetSpec::LogDetConeTriangle { side_dimension }
            | SetSpec::LogDetConeSquare { side_dimension } => at_least("side_dimension", *side_dimension, 1),
            SetSpec::NormSpectralCone { row_dim, column_dim } | SetSpec::NormNuclearCone { row_dim, column_dim } => {
                at_least("row_dim", *row_dim, 1)?;
                at_least("column_dim", *column_dim, 1)
            }
            SetSpec::IndicatorSet { set, .. } => set.validate(),
            SetSpec::Sos1 { weights } | SetSpec::Sos2 { weights } => {
                at_least("number of weights", weights.len(), 1)?;
                if weights.iter().any(|w| !w.is_finite()) {
                    return Err(invalid("SOS weights must be finite"));
                }
                let mut sorted = weights.clone();
                sorted.sort_by(f64::total_cmp);
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(invalid("SOS weights must be distinct"));
                }
                Ok(())
            }
        }
    }
}
