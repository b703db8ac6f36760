use nalgebra::{DMatrix, SymmetricEigen};

use super::OracleError;

/// Tolerance on the smallest eigenvalue, scaled by `max(1, trace)`.
pub const PSD_TOL: f64 = 1e-10;

/// Determinants below this trigger [`OracleError::Singular`].
pub const SINGULAR_DET: f64 = 1e-30;

/// Eigenvalues of a unit-diagonal block at or below this are rounding noise
/// around an exact zero; the block is reported singular.
pub const DEGENERATE_EIG: f64 = 1e-13;

/// Jointly Gaussian, zero-mean variables with a named covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSystem {
    names: Vec<String>,
    covariance: DMatrix<f64>,
}

impl GaussianSystem {
    /// Checks shape, symmetry and positive semidefiniteness.
    pub fn new(names: Vec<String>, covariance: DMatrix<f64>) -> Result<Self, OracleError> {
        let n = names.len();
        if covariance.nrows() != n || covariance.ncols() != n {
            return Err(OracleError::Shape {
                names: n,
                rows: covariance.nrows(),
                cols: covariance.ncols(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(OracleError::DuplicateName(name.clone()));
            }
        }
        if covariance.iter().any(|v| !v.is_finite()) {
            return Err(OracleError::NotFinite);
        }
        for i in 0..n {
            for j in 0..i {
                let (x, y) = (covariance[(i, j)], covariance[(j, i)]);
                if (x - y).abs() > 1e-12 * x.abs().max(y.abs()).max(1.0) {
                    return Err(OracleError::Asymmetric(names[i].clone(), names[j].clone()));
                }
            }
        }
        let system = Self { names, covariance };
        let min_eig = system.min_eigenvalue();
        if min_eig < -PSD_TOL * system.covariance.trace().max(1.0) {
            return Err(OracleError::NotPsd(min_eig));
        }
        Ok(system)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    pub fn index_of(&self, name: &str) -> Result<usize, OracleError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| OracleError::UnknownVariable(name.to_owned()))
    }

    pub fn cov(&self, x: &str, y: &str) -> Result<f64, OracleError> {
        Ok(self.covariance[(self.index_of(x)?, self.index_of(y)?)])
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.names.is_empty() {
            return 0.0;
        }
        SymmetricEigen::new(self.covariance.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    fn indices(&self, vars: &[&str]) -> Result<Vec<usize>, OracleError> {
        vars.iter().map(|v| self.index_of(v)).collect()
    }

    /// `log₂ det` of the principal submatrix on `idx` (sorted, nonempty).
    ///
    /// The block is rescaled to unit diagonal before the eigendecomposition so
    /// that variables of very different power do not swamp each other.
    fn log2_det(&self, idx: &[usize]) -> Result<f64, OracleError> {
        let k = idx.len();
        let scale: Vec<f64> = idx
            .iter()
            .map(|&i| self.covariance[(i, i)].sqrt())
            .collect();
        let corr = DMatrix::from_fn(k, k, |r, c| {
            self.covariance[(idx[r], idx[c])] / (scale[r] * scale[c])
        });
        let eig = SymmetricEigen::new(corr).eigenvalues;
        let mut log_det: f64 = scale.iter().map(|s| 2.0 * s.log2()).sum();
        for &lambda in eig.iter() {
            if lambda <= DEGENERATE_EIG {
                return Err(self.singular(idx));
            }
            log_det += lambda.log2();
        }
        if log_det < SINGULAR_DET.log2() {
            return Err(self.singular(idx));
        }
        Ok(log_det)
    }

    fn singular(&self, idx: &[usize]) -> OracleError {
        OracleError::Singular(idx.iter().map(|&i| self.names[i].clone()).collect())
    }
}

/// `I(A; B | C)` in bits from covariance determinants:
///
/// `½ log₂(det Σ_{A∪C} · det Σ_{B∪C} / (det Σ_C · det Σ_{A∪B∪C}))`, `det Σ_∅ = 1`.
///
/// Zero-variance variables are constants; they are dropped, and a term with
/// nothing left on either side is 0. When one side has exactly zero
/// covariance with everything else involved, the result is exactly 0.
pub fn conditional_mi(
    system: &GaussianSystem,
    a: &[&str],
    b: &[&str],
    c: &[&str],
) -> Result<f64, OracleError> {
    let a = system.indices(a)?;
    let b = system.indices(b)?;
    let c = system.indices(c)?;
    for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
        if let Some(&i) = x.iter().find(|i| y.contains(i)) {
            return Err(OracleError::Overlap(system.names[i].clone()));
        }
    }

    let cov = &system.covariance;
    let live = |v: Vec<usize>| -> Vec<usize> {
        let mut v: Vec<usize> = v.into_iter().filter(|&i| cov[(i, i)] != 0.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (a, b, c) = (live(a), live(b), live(c));
    if a.is_empty() || b.is_empty() {
        return Ok(0.0);
    }

    let detached = |x: &[usize], rest: &[&[usize]]| {
        x.iter()
            .all(|&i| rest.iter().all(|r| r.iter().all(|&j| cov[(i, j)] == 0.0)))
    };
    if detached(&a, &[&b, &c]) || detached(&b, &[&a, &c]) {
        return Ok(0.0);
    }

    let union = |parts: &[&[usize]]| {
        let mut v: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        v.sort_unstable();
        v
    };
    let ac = system.log2_det(&union(&[&a, &c]))?;
    let bc = system.log2_det(&union(&[&b, &c]))?;
    let abc = system.log2_det(&union(&[&a, &b, &c]))?;
    let c_only = if c.is_empty() {
        0.0
    } else {
        system.log2_det(&c)?
    };

    Ok((0.5 * ((ac + bc) - (c_only + abc))).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn system(names: &[&str], rows: &[&[f64]]) -> GaussianSystem {
        let n = names.len();
        let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        GaussianSystem::new(names.iter().map(|s| s.to_string()).collect(), m).unwrap()
    }

    #[test]
    fn rejects_malformed_covariances() {
        let names = vec!["x".to_string(), "y".to_string()];
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(
            GaussianSystem::new(names.clone(), asym),
            Err(OracleError::Asymmetric(..))
        ));
        let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(
            GaussianSystem::new(names.clone(), indefinite),
            Err(OracleError::NotPsd(_))
        ));
        let wrong = DMatrix::from_row_slice(1, 1, &[1.0]);
        assert!(matches!(
            GaussianSystem::new(names, wrong),
            Err(OracleError::Shape { .. })
        ));
    }

    #[test]
    fn scalar_channel_capacity() {
        // Y = X + Z with var X = 3: I = ½ log₂ 4 = 1.
        let s = system(&["x", "y"], &[&[3.0, 3.0], &[3.0, 4.0]]);
        assert_relative_eq!(
            conditional_mi(&s, &["x"], &["y"], &[]).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn independent_variables_give_exact_zero() {
        let s = system(
            &["x", "y", "z"],
            &[&[2.0, 0.0, 1.0], &[0.0, 5.0, 0.0], &[1.0, 0.0, 3.0]],
        );
        assert_eq!(conditional_mi(&s, &["x"], &["y"], &[]).unwrap(), 0.0);
        assert_eq!(conditional_mi(&s, &["y"], &["x"], &["z"]).unwrap(), 0.0);
    }

    #[test]
    fn constants_are_dropped() {
        let s = system(
            &["x", "k", "y"],
            &[&[1.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[1.0, 0.0, 2.0]],
        );
        assert_eq!(conditional_mi(&s, &["k"], &["y"], &[]).unwrap(), 0.0);
        let with = conditional_mi(&s, &["x", "k"], &["y"], &[]).unwrap();
        assert_relative_eq!(with, 0.5, max_relative = 1e-14);
    }

    #[test]
    fn singular_conditioning_is_reported() {
        // y = x exactly.
        let s = system(
            &["x", "y", "z"],
            &[&[1.0, 1.0, 0.5], &[1.0, 1.0, 0.5], &[0.5, 0.5, 1.0]],
        );
        match conditional_mi(&s, &["z"], &["x"], &["y"]) {
            Err(OracleError::Singular(vars)) => assert!(vars.contains(&"x".to_string())),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn overlap_and_unknown_names() {
        let s = system(&["x", "y"], &[&[1.0, 0.5], &[0.5, 1.0]]);
        assert!(matches!(
            conditional_mi(&s, &["x"], &["x"], &[]),
            Err(OracleError::Overlap(_))
        ));
        assert!(matches!(
            conditional_mi(&s, &["x"], &["q"], &[]),
            Err(OracleError::UnknownVariable(_))
        ));
    }
}
