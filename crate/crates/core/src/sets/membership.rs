//! Numerical membership oracle. Every inequality is slackened by `tol`.

use super::matrix::{min_eigenvalue, singular_values, symmetric_from_square, symmetric_from_triangle};
use super::{SetError, SetSpec};
use nalgebra::DMatrix;

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Is `point` in `set`, up to `tol`?
pub fn membership(set: &SetSpec, point: &[f64], tol: f64) -> Result<bool, SetError> {
    let dim = set.dimension();
    if point.len() != dim {
        return Err(SetError::DimensionMismatch { point: point.len(), set: dim });
    }
    if point.iter().any(|v| v.is_nan()) {
        return Ok(false);
    }
    let p = point;
    let ok = match set {
        SetSpec::LessThan { upper } => p[0] <= upper + tol,
        SetSpec::GreaterThan { lower } => p[0] >= lower - tol,
        SetSpec::EqualTo { value } => (p[0] - value).abs() <= tol,
        SetSpec::Interval { lower, upper } => p[0] >= lower - tol && p[0] <= upper + tol,
        SetSpec::Integer => (p[0] - p[0].round()).abs() <= tol,
        SetSpec::ZeroOne => p[0].abs().min((p[0] - 1.0).abs()) <= tol,
        SetSpec::Semiinteger { lower, upper } => {
            let nearest = p[0].round().clamp(*lower, *upper);
            p[0].abs() <= tol || (p[0] - nearest).abs() <= tol
        }
        SetSpec::Semicontinuous { lower, upper } => {
            p[0].abs() <= tol || (p[0] >= lower - tol && p[0] <= upper + tol)
        }
        SetSpec::Zeros { .. } => p.iter().all(|v| v.abs() <= tol),
        SetSpec::Reals { .. } => true,
        SetSpec::Nonpositives { .. } => p.iter().all(|v| *v <= tol),
        SetSpec::Nonnegatives { .. } => p.iter().all(|v| *v >= -tol),
        SetSpec::SecondOrderCone { .. } => p[0] >= norm2(&p[1..]) - tol,
        SetSpec::RotatedSecondOrderCone { .. } => {
            let (t, u) = (p[0], p[1]);
            let x2: f64 = p[2..].iter().map(|v| v * v).sum();
            t >= -tol && u >= -tol && 2.0 * t * u >= x2 - tol
        }
        SetSpec::ExponentialCone => {
            let (x, y, z) = (p[0], p[1], p[2]);
            if y < -tol {
                false
            } else if y <= tol {
                x <= tol && z >= -tol
            } else {
                y * (x / y).exp() <= z + tol
            }
        }
        SetSpec::DualExponentialCone => {
            let (u, v, w) = (p[0], p[1], p[2]);
            if u > tol {
                false
            } else if u >= -tol {
                v >= -tol && w >= -tol
            } else {
                -u * (v / u).exp() <= std::f64::consts::E * w + tol
            }
        }
        SetSpec::GeometricMeanCone { .. } => {
            let x = &p[1..];
            if x.iter().any(|v| *v < -tol) {
                false
            } else {
                let n = x.len() as f64;
                let mean = if x.iter().any(|v| *v <= 0.0) {
                    0.0
                } else {
                    (x.iter().map(|v| v.ln()).sum::<f64>() / n).exp()
                };
                p[0] <= mean + tol
            }
        }
        SetSpec::PowerCone { exponent: a } => {
            let (x, y, z) = (p[0], p[1], p[2]);
            x >= -tol && y >= -tol && x.max(0.0).powf(*a) * y.max(0.0).powf(1.0 - a) >= z.abs() - tol
        }
        SetSpec::DualPowerCone { exponent: a } => {
            let (u, v, w) = (p[0], p[1], p[2]);
            u >= -tol
                && v >= -tol
                && (u.max(0.0) / a).powf(*a) * (v.max(0.0) / (1.0 - a)).powf(1.0 - a) >= w.abs() - tol
        }
        SetSpec::NormOneCone { .. } => p[0] >= p[1..].iter().map(|v| v.abs()).sum::<f64>() - tol,
        SetSpec::NormInfinityCone { .. } => p[0] >= p[1..].iter().fold(0.0_f64, |m, v| m.max(v.abs())) - tol,
        SetSpec::RelativeEntropyCone { dimension } => {
            let n = (dimension - 1) / 2;
            let (v, w) = (&p[1..1 + n], &p[1 + n..]);
            if v.iter().chain(w).any(|x| *x < -tol) {
                false
            } else {
                let total: f64 = v
                    .iter()
                    .zip(w)
                    .map(|(vi, wi)| {
                        let (vi, wi) = (vi.max(0.0), wi.max(0.0));
                        if wi == 0.0 {
                            0.0
                        } else if vi == 0.0 {
                            f64::INFINITY
                        } else {
                            wi * (wi / vi).ln()
                        }
                    })
                    .sum();
                p[0] >= total - tol
            }
        }
        SetSpec::PositiveSemidefiniteConeTriangle { side_dimension: d } => {
            min_eigenvalue(&symmetric_from_triangle(p, *d)) >= -tol
        }
        SetSpec::PositiveSemidefiniteConeSquare { side_dimension: d } => {
            symmetric_from_square(p, *d, tol).is_some_and(|m| min_eigenvalue(&m) >= -tol)
        }
        SetSpec::RootDetConeTriangle { side_dimension: d } => {
            root_det(p[0], Some(symmetric_from_triangle(&p[1..], *d)), *d, tol)
        }
        SetSpec::RootDetConeSquare { side_dimension: d } => {
            root_det(p[0], symmetric_from_square(&p[1..], *d, tol), *d, tol)
        }
        SetSpec::LogDetConeTriangle { side_dimension: d } => {
            log_det(p[0], p[1], Some(symmetric_from_triangle(&p[2..], *d)), tol)
        }
        SetSpec::LogDetConeSquare { side_dimension: d } => {
            log_det(p[0], p[1], symmetric_from_square(&p[2..], *d, tol), tol)
        }
        SetSpec::NormSpectralCone { row_dim, column_dim } => {
            let s = singular_values(&p[1..], *row_dim, *column_dim);
            p[0] >= s.iter().fold(0.0_f64, |m, v| m.max(*v)) - tol
        }
        SetSpec::NormNuclearCone { row_dim, column_dim } => {
            p[0] >= singular_values(&p[1..], *row_dim, *column_dim).iter().sum::<f64>() - tol
        }
        SetSpec::Complements { dimension } => {
            let n = dimension / 2;
            return complements_membership(p, &vec![f64::NEG_INFINITY; n], &vec![f64::INFINITY; n], tol);
        }
        SetSpec::IndicatorSet { activate_on, set } => {
            if (p[0] - activate_on.value()).abs() <= tol {
                return membership(set, &p[1..], tol);
            }
            true
        }
        SetSpec::Sos1 { .. } => p.iter().filter(|v| v.abs() > tol).count() <= 1,
        SetSpec::Sos2 { weights } => {
            let mut order: Vec<usize> = (0..weights.len()).collect();
            order.sort_by(|a, b| weights[*a].total_cmp(&weights[*b]));
            let nonzero: Vec<usize> = order
                .iter()
                .enumerate()
                .filter(|(_, i)| p[**i].abs() > tol)
                .map(|(pos, _)| pos)
                .collect();
            match nonzero.as_slice() {
                [] | [_] => true,
                [a, b] => b - a == 1,
                _ => false,
            }
        }
    };
    Ok(ok)
}

fn determinant(m: &DMatrix<f64>) -> f64 {
    m.clone().determinant()
}

fn root_det(t: f64, x: Option<DMatrix<f64>>, d: usize, tol: f64) -> bool {
    let Some(x) = x else { return false };
    if !(min_eigenvalue(&x) >= -tol) {
        return false;
    }
    t <= determinant(&x).max(0.0).powf(1.0 / d as f64) + tol
}

fn log_det(t: f64, u: f64, x: Option<DMatrix<f64>>, tol: f64) -> bool {
    let Some(x) = x else { return false };
    if !(u > tol) || !(min_eigenvalue(&x) >= -tol) {
        return false;
    }
    let det = determinant(&(x / u));
    if det <= 0.0 {
        return false;
    }
    t <= u * det.ln() + tol
}

/// Mixed-complementarity membership for `(x, y)` given the bounds on `y`.
///
/// `y_i` at its lower bound requires `x_i ≥ 0`, at its upper bound
/// `x_i ≤ 0`, strictly between them `x_i = 0`. A fixed `y_i` (`l_i = u_i`)
/// places no sign restriction on `x_i`; `y_i` outside its bounds is rejected.
pub fn complements_membership(point: &[f64], lower: &[f64], upper: &[f64], tol: f64) -> Result<bool, SetError> {
    let n = lower.len();
    if point.len() != 2 * n || upper.len() != n {
        return Err(SetError::DimensionMismatch { point: point.len(), set: 2 * n });
    }
    for i in 0..n {
        let (x, y, l, u) = (point[i], point[n + i], lower[i], upper[i]);
        let at_lower = (y - l).abs() <= tol;
        let at_upper = (y - u).abs() <= tol;
        let ok = if at_lower && at_upper {
            true
        } else if at_lower {
            x >= -tol
        } else if at_upper {
            x <= tol
        } else if y > l && y < u {
            x.abs() <= tol
        } else {
            false
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
