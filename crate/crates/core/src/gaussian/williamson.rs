use nalgebra::{Complex, DMatrix, SymmetricEigen};

use super::omega_sym;
use crate::error::{Error, Result};

/// Largest accepted condition number of a covariance matrix.
pub const MAX_CONDITION: f64 = 1e12;

/// Williamson normal form V = S·(⊕ λ_j I₂)·Sᵀ with S symplectic.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    /// λ_j, sorted descending.
    pub eigenvalues: Vec<f64>,
    pub symplectic_matrix: DMatrix<f64>,
}

impl SymplecticSpectrum {
    /// S·diag(λ)·Sᵀ.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let s = &self.symplectic_matrix;
        let mut scaled = s.clone();
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            scaled.column_mut(2 * j).scale_mut(l);
            scaled.column_mut(2 * j + 1).scale_mut(l);
        }
        scaled * s.transpose()
    }

    /// Max-abs residuals of the reconstruction (relative to the largest
    /// entry of `cov`) and of S Ω Sᵀ = Ω.
    pub fn residuals(&self, cov: &DMatrix<f64>) -> (f64, f64) {
        let n = self.eigenvalues.len();
        let rec = (self.reconstruct() - cov).amax() / cov.amax().max(1.0);
        let om = omega_sym(n);
        let s = &self.symplectic_matrix;
        let sym = (s * &om * s.transpose() - om).amax();
        (rec, sym)
    }
}

/// Numerical Williamson decomposition of a symmetric positive-definite `cov`.
///
/// With A = V^{-1/2} Ω V^{-1/2} antisymmetric, the Hermitian matrix iA has
/// eigenpairs ±μ_j. For μ_j > 0 with eigenvector x + iy one has A x = μ y and
/// A y = −μ x, so √2(y, x) is an orthonormal pair bringing A to
/// ⊕ μ_j [[0,1],[−1,0]]. Degenerate μ are handled by the Hermitian solver's
/// orthonormal eigenbasis, no pairing heuristics needed.
pub fn williamson(cov: &DMatrix<f64>) -> Result<SymplecticSpectrum> {
    let dim = cov.nrows();
    if dim == 0 || dim % 2 != 0 || cov.ncols() != dim {
        return Err(Error::param("cov", "must be square with even dimension"));
    }
    let n = dim / 2;
    let sym = (cov + cov.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let wmin = eig.eigenvalues.min();
    let wmax = eig.eigenvalues.max();
    if !(wmin > 0.0) {
        return Err(Error::NonPhysical(format!(
            "covariance is not positive definite (smallest eigenvalue {wmin:.3e})"
        )));
    }
    if wmax / wmin > MAX_CONDITION {
        return Err(Error::IllConditioned { condition: wmax / wmin });
    }
    let u = &eig.eigenvectors;
    let root = u * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * u.transpose();
    let inv_root = u * DMatrix::from_diagonal(&eig.eigenvalues.map(|w| 1.0 / w.sqrt())) * u.transpose();

    let a = &inv_root * omega_sym(n) * &inv_root;
    let a = (&a - a.transpose()) * 0.5;
    let h = DMatrix::from_fn(dim, dim, |i, j| Complex::new(0.0, a[(i, j)]));
    let heig = SymmetricEigen::new(h);

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| heig.eigenvalues[j].total_cmp(&heig.eigenvalues[i]));
    // Positive half, ascending μ so that λ = 1/μ comes out descending.
    let mut positive: Vec<usize> = order[..n].to_vec();
    positive.reverse();

    let mut o = DMatrix::zeros(dim, dim);
    let mut eigenvalues = Vec::with_capacity(n);
    for (j, &k) in positive.iter().enumerate() {
        let mu = heig.eigenvalues[k];
        if !(mu > 0.0) {
            return Err(Error::Numerical("Williamson: symplectic spectrum lost positivity".into()));
        }
        let v = heig.eigenvectors.column(k);
        for r in 0..dim {
            o[(r, 2 * j)] = std::f64::consts::SQRT_2 * v[r].im;
            o[(r, 2 * j + 1)] = std::f64::consts::SQRT_2 * v[r].re;
        }
        eigenvalues.push(1.0 / mu);
    }
    let mut s = root * o;
    for (j, &l) in eigenvalues.iter().enumerate() {
        let f = 1.0 / l.sqrt();
        s.column_mut(2 * j).scale_mut(f);
        s.column_mut(2 * j + 1).scale_mut(f);
    }
    Ok(SymplecticSpectrum {
        eigenvalues,
        symplectic_matrix: s,
    })
}
