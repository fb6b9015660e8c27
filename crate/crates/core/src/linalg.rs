use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result};

const MAX_SWEEPS_PER_DIM: usize = 200;

/// Eigenvalues of a symmetric matrix, ascending.
pub(crate) fn symmetric_eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    if n == 0 {
        return Ok(Vec::new());
    }
    let eig =
        SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS_PER_DIM * n.max(1)).ok_or(Error::EigenSolver { n })?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenSolver { n });
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Spectral norm of a symmetric matrix (largest absolute eigenvalue).
pub(crate) fn symmetric_spectral_norm(m: DMatrix<f64>) -> Result<f64> {
    let values = symmetric_eigenvalues(m)?;
    Ok(values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let v = symmetric_eigenvalues(m).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14);
        assert!((v[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn norm_takes_absolute_value() {
        let m = DMatrix::from_row_slice(2, 2, &[-5.0, 0.0, 0.0, 1.0]);
        assert_eq!(symmetric_spectral_norm(m).unwrap(), 5.0);
    }

    #[test]
    fn empty() {
        assert!(symmetric_eigenvalues(DMatrix::zeros(0, 0)).unwrap().is_empty());
    }
}
