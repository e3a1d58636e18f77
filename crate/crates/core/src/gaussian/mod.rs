//! Gaussian-state linear algebra.
//!
//! Convention: quadratures q = a + a†, p = (a − a†)/i, ordered
//! (q₁, p₁, …, q_n, p_n). The vacuum has identity covariance.

mod chernoff;
mod williamson;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub use chernoff::{g_factors, qcb_bin, qcb_term, ChernoffPair, ChernoffResult, SSearch};
pub use williamson::{williamson, SymplecticSpectrum};

/// Symmetry tolerance, relative to the largest entry.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Symplectic eigenvalues below `1 − PHYSICAL_TOL` fail validation.
pub const PHYSICAL_TOL: f64 = 1e-6;

/// Symplectic form ⊕ [[0, 1], [−1, 0]] on `n` modes.
pub fn omega_sym(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        m[(2 * j, 2 * j + 1)] = 1.0;
        m[(2 * j + 1, 2 * j)] = -1.0;
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    pub mean: DVector<f64>,
    pub cov: DMatrix<f64>,
    spectrum: Option<SymplecticSpectrum>,
}

impl GaussianState {
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::param("mean", "length must be a positive even number"));
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::param("cov", format!("must be {dim}×{dim}")));
        }
        let resid = symmetry_residual(&cov);
        if resid > SYMMETRY_TOL * cov.amax().max(1.0) {
            return Err(Error::NonPhysical(format!("covariance not symmetric (residual {resid:.3e})")));
        }
        Ok(GaussianState {
            mean,
            cov,
            spectrum: None,
        })
    }

    pub fn vacuum(n: usize) -> Self {
        Self::thermal(n, 0.0)
    }

    /// Product of `n` thermal modes with mean occupation `nb`.
    pub fn thermal(n: usize, nb: f64) -> Self {
        let nu = 2.0 * nb + 1.0;
        GaussianState {
            mean: DVector::zeros(2 * n),
            cov: DMatrix::identity(2 * n, 2 * n) * nu,
            spectrum: Some(SymplecticSpectrum {
                eigenvalues: vec![nu; n],
                symplectic_matrix: DMatrix::identity(2 * n, 2 * n),
            }),
        }
    }

    /// Single-mode coherent state |α⟩.
    pub fn coherent(re: f64, im: f64) -> Self {
        let mut s = Self::vacuum(1);
        s.mean = DVector::from_vec(vec![2.0 * re, 2.0 * im]);
        s
    }

    pub fn mode_count(&self) -> usize {
        self.mean.len() / 2
    }

    /// Attaches a known Williamson decomposition so later Chernoff evaluations
    /// skip the numerical one. The caller vouches for its correctness.
    pub fn with_spectrum(mut self, spectrum: SymplecticSpectrum) -> Self {
        debug_assert_eq!(spectrum.eigenvalues.len(), self.mode_count());
        self.spectrum = Some(spectrum);
        self
    }

    pub fn attached_spectrum(&self) -> Option<&SymplecticSpectrum> {
        self.spectrum.as_ref()
    }

    /// The attached decomposition if any, otherwise a fresh numerical one.
    pub fn symplectic(&self) -> Result<std::borrow::Cow<'_, SymplecticSpectrum>> {
        match &self.spectrum {
            Some(s) => Ok(std::borrow::Cow::Borrowed(s)),
            None => williamson(&self.cov).map(std::borrow::Cow::Owned),
        }
    }
}

fn symmetry_residual(m: &DMatrix<f64>) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..i {
            r = r.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    r
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub symmetry_residual: f64,
    /// NaN when the covariance is not positive definite.
    pub min_symplectic_eigenvalue: f64,
    pub physical: bool,
    pub message: Option<String>,
}

/// Checks symmetry and the uncertainty principle (all λ_j ≥ 1 − 10⁻⁶).
pub fn validate_state(state: &GaussianState) -> Diagnostics {
    let symmetry_residual = symmetry_residual(&state.cov);
    if symmetry_residual > SYMMETRY_TOL * state.cov.amax().max(1.0) {
        return Diagnostics {
            symmetry_residual,
            min_symplectic_eigenvalue: f64::NAN,
            physical: false,
            message: Some("covariance not symmetric".into()),
        };
    }
    let spectrum = match state.symplectic() {
        Ok(s) => s,
        Err(e) => {
            return Diagnostics {
                symmetry_residual,
                min_symplectic_eigenvalue: f64::NAN,
                physical: false,
                message: Some(e.to_string()),
            }
        }
    };
    let min = spectrum.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let physical = min >= 1.0 - PHYSICAL_TOL;
    Diagnostics {
        symmetry_residual,
        min_symplectic_eigenvalue: min,
        physical,
        message: (!physical).then(|| format!("symplectic eigenvalue {min} violates the uncertainty principle")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let d = validate_state(&GaussianState::vacuum(1));
        assert!(d.physical);
        assert!((d.min_symplectic_eigenvalue - 1.0).abs() < 1e-12);

        let thermal = GaussianState::new(DVector::zeros(2), DMatrix::identity(2, 2) * 65.0).unwrap();
        let d = validate_state(&thermal);
        assert!(d.physical);
        assert!((d.min_symplectic_eigenvalue - 65.0).abs() < 1e-9);

        let squeezed_too_far = GaussianState::new(DVector::zeros(2), DMatrix::identity(2, 2) * 0.5).unwrap();
        let d = validate_state(&squeezed_too_far);
        assert!(!d.physical);
        assert!((d.min_symplectic_eigenvalue - 0.5).abs() < 1e-12);

        let indefinite = GaussianState::new(DVector::zeros(2), DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0]))).unwrap();
        assert!(!validate_state(&indefinite).physical);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(GaussianState::new(DVector::zeros(3), DMatrix::identity(3, 3)).is_err());
        assert!(GaussianState::new(DVector::zeros(2), DMatrix::identity(4, 4)).is_err());
        let mut asym = DMatrix::identity(2, 2);
        asym[(0, 1)] = 0.1;
        assert!(GaussianState::new(DVector::zeros(2), asym).is_err());
    }
}
