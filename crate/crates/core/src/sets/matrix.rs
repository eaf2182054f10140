//! Packing conventions for symmetric matrices and small dense helpers.

use nalgebra::DMatrix;

use super::SetError;

fn check_len(point: &[f64], expected: usize) -> Result<(), SetError> {
    if point.len() == expected {
        Ok(())
    } else {
        Err(SetError::DimensionMismatch { point: point.len(), set: expected })
    }
}

/// Expand the column-by-column upper triangle of a symmetric `d × d` matrix
/// into its full column-major entry list.
pub fn triangle_to_square(point: &[f64], d: usize) -> Result<Vec<f64>, SetError> {
    check_len(point, d * (d + 1) / 2)?;
    let mut out = vec![0.0; d * d];
    let mut k = 0;
    for j in 0..d {
        for i in 0..=j {
            out[i + j * d] = point[k];
            out[j + i * d] = point[k];
            k += 1;
        }
    }
    Ok(out)
}

/// Inverse of [`triangle_to_square`]. Fails with `AsymmetricInput` if some
/// `|X_ij - X_ji| > tol`. Upper-triangle entries are kept as given.
pub fn square_to_triangle(point: &[f64], d: usize, tol: f64) -> Result<Vec<f64>, SetError> {
    check_len(point, d * d)?;
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for j in 0..d {
        for i in 0..=j {
            let upper = point[i + j * d];
            let lower = point[j + i * d];
            if (upper - lower).abs() > tol || upper.is_nan() || lower.is_nan() {
                return Err(SetError::AsymmetricInput);
            }
            out.push(upper);
        }
    }
    Ok(out)
}

pub(crate) fn symmetric_from_triangle(entries: &[f64], d: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(d, d);
    let mut k = 0;
    for j in 0..d {
        for i in 0..=j {
            m[(i, j)] = entries[k];
            m[(j, i)] = entries[k];
            k += 1;
        }
    }
    m
}

/// Symmetric part of a column-major square matrix, or `None` when the input
/// is not symmetric within `tol`.
pub(crate) fn symmetric_from_square(entries: &[f64], d: usize, tol: f64) -> Option<DMatrix<f64>> {
    let m = DMatrix::from_column_slice(d, d, entries);
    for j in 0..d {
        for i in 0..j {
            if !((m[(i, j)] - m[(j, i)]).abs() <= tol) {
                return None;
            }
        }
    }
    Some((&m + m.transpose()) * 0.5)
}

pub(crate) fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.iter().any(|v| !v.is_finite()) {
        return f64::NAN;
    }
    m.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn singular_values(entries: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let m = DMatrix::from_column_slice(rows, cols, entries);
    m.singular_values().iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_examples() {
        assert_eq!(triangle_to_square(&[1.0, 2.0, 3.0], 2).unwrap(), vec![1.0, 2.0, 2.0, 3.0]);
        assert_eq!(square_to_triangle(&[1.0, 2.0, 2.0, 3.0], 2, 1e-9).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(square_to_triangle(&[1.0, 2.0, 5.0, 3.0], 2, 1e-9), Err(SetError::AsymmetricInput));
    }

    #[test]
    fn three_by_three_layout() {
        // X11, X12, X22, X13, X23, X33
        let tri = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let sq = triangle_to_square(&tri, 3).unwrap();
        assert_eq!(sq, vec![1.0, 2.0, 4.0, 2.0, 3.0, 5.0, 4.0, 5.0, 6.0]);
        assert_eq!(square_to_triangle(&sq, 3, 0.0).unwrap(), tri.to_vec());
    }

    #[test]
    fn wrong_length() {
        assert!(matches!(triangle_to_square(&[1.0, 2.0], 2), Err(SetError::DimensionMismatch { .. })));
    }
}
