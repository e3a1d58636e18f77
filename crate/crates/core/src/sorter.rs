//! Hermite-Gaussian mode sorting of the received elliptical beam.
//!
//! The occupancy of HG mode (n, m) is
//!
//! p_{n,m} = c_n c_m · 4χ cosφ / ((1+χ)(cos²φ+χ)) · q_n^{2n} q_m^{2m},
//!
//! with c_n = (2n−1)!!/(2ⁿ n!), q_n = (1−χ)/(1+χ) and
//! q_m = (cos²φ−χ)/(cos²φ+χ). Since Σ c_n q^{2n} = (1−q²)^{−1/2}, the full
//! double sum is exactly one.

use std::f64::consts::PI;

use log::warn;
use nalgebra::DMatrix;

use crate::env::C;
use crate::error::{Error, Result};

/// ln c_n = ln[(2n−1)!!/(2ⁿ n!)] = Σ_{k≤n} ln(1 − 1/2k).
///
/// Summed in log space so nothing overflows for large n.
pub fn ln_hg_coefficient(n: usize) -> f64 {
    (1..=n).map(|k| (-0.5 / k as f64).ln_1p()).sum()
}

fn ratios(phi: f64, chi: f64) -> (f64, f64, f64) {
    let c = phi.cos();
    let c2 = c * c;
    let pref = 4.0 * chi * c / ((1.0 + chi) * (c2 + chi));
    ((1.0 - chi) / (1.0 + chi), (c2 - chi) / (c2 + chi), pref)
}

fn geometric(q: f64, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        2.0 * n as f64 * q.abs().ln()
    }
}

/// Probability that the received photon occupies HG mode (n, m).
pub fn hg_occupation(n: usize, m: usize, phi: f64, chi: f64) -> f64 {
    let (qn, qm, pref) = ratios(phi, chi);
    if n == 0 && m == 0 {
        return pref;
    }
    pref * (ln_hg_coefficient(n) + ln_hg_coefficient(m) + geometric(qn, n) + geometric(qm, m)).exp()
}

/// Σ_{n,m ≤ n_max} p_{n,m}, using the separable structure of the sum.
pub fn truncated_occupancy_sum(phi: f64, chi: f64, n_max: usize) -> f64 {
    let (qn, qm, pref) = ratios(phi, chi);
    let series = |q: f64| {
        let mut ln_c = 0.0;
        let mut total = 1.0;
        for k in 1..=n_max {
            ln_c += (-0.5 / k as f64).ln_1p();
            total += (ln_c + geometric(q, k)).exp();
        }
        total
    };
    pref * series(qn) * series(qm)
}

/// dP₁/dφ for the fundamental-mode occupancy P₁ = p_{0,0}.
pub fn occupancy_derivative(phi: f64, chi: f64) -> f64 {
    let c = phi.cos();
    let c2 = c * c;
    -phi.sin() * 4.0 * chi / (1.0 + chi) * (chi - c2) / ((c2 + chi) * (c2 + chi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyTable {
    /// (n, m, p_{n,m}) in relabeled order 𝓟₁, 𝓟₂, ….
    pub entries: Vec<(usize, usize, f64)>,
    /// 1 − Σ 𝓟_j.
    pub residual: f64,
}

impl OccupancyTable {
    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.2).collect()
    }
}

/// The first `k` occupancies in diagonal order
/// p_{0,0}, p_{1,0}, p_{0,1}, p_{2,0}, p_{1,1}, p_{0,2}, …
pub fn occupancy_sequence(phi: f64, chi: f64, k: usize) -> OccupancyTable {
    let mut entries = Vec::with_capacity(k);
    let mut order = 0;
    'outer: loop {
        for m in 0..=order {
            if entries.len() == k {
                break 'outer;
            }
            let n = order - m;
            entries.push((n, m, hg_occupation(n, m, phi, chi)));
        }
        order += 1;
    }
    let residual = 1.0 - entries.iter().map(|e| e.2).sum::<f64>();
    OccupancyTable { entries, residual }
}

/// Soft-aperture and beam geometry at the focal plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApertureGeometry {
    /// δ, m.
    pub aperture_diameter: f64,
    /// r, m.
    pub minor_half_axis: f64,
    /// L, m.
    pub range: f64,
    /// ω₀, rad/s.
    pub carrier_angular_freq: f64,
    /// A_δ = πδ²/4, m².
    pub aperture_area: f64,
    /// D_f = (2π A_δ c L/ω₀)², as printed in the source model.
    pub fresnel_number: f64,
    /// β = √2 (1 + 4D_f)^{1/4}/δ, 1/m.
    pub hg_scale: f64,
    /// χ = 2β²r².
    pub chi: f64,
    /// Complex focus parameter (re, im) = ½(1, ω₀/(cβ²L)); only its real
    /// part ½ enters the occupancy formula.
    pub focus: (f64, f64),
}

pub fn aperture_geometry(delta: f64, r: f64, range: f64, omega0: f64) -> Result<ApertureGeometry> {
    for (key, v) in [
        ("aperture_diameter", delta),
        ("minor_half_axis", r),
        ("range", range),
        ("carrier_angular_freq", omega0),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::param(key, "must be positive"));
        }
    }
    let area = PI * delta * delta / 4.0;
    let root = 2.0 * PI * area * C * range / omega0;
    let fresnel = root * root;
    if fresnel > 0.01 {
        warn!("Fresnel number D_f = {fresnel:.3e} is not ≪ 1; far-field occupancies are approximate");
    }
    let beta = std::f64::consts::SQRT_2 * (1.0 + 4.0 * fresnel).powf(0.25) / delta;
    Ok(ApertureGeometry {
        aperture_diameter: delta,
        minor_half_axis: r,
        range,
        carrier_angular_freq: omega0,
        aperture_area: area,
        fresnel_number: fresnel,
        hg_scale: beta,
        chi: 2.0 * beta * beta * r * r,
        focus: (0.5, 0.5 * omega0 / (C * beta * beta * range)),
    })
}

/// Transmissivities and mixing matrices of a k-stage beamsplitter cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct Cascade {
    pub etas: Vec<f64>,
    /// [[√η, √(1−η)], [−√(1−η), √η]] ⊗ I₂ for each stage.
    pub matrices: Vec<DMatrix<f64>>,
}

pub fn beamsplitter_matrix(eta: f64) -> DMatrix<f64> {
    let t = eta.sqrt();
    let r = (1.0 - eta).max(0.0).sqrt();
    DMatrix::from_row_slice(
        4,
        4,
        &[t, 0.0, r, 0.0, 0.0, t, 0.0, r, -r, 0.0, t, 0.0, 0.0, -r, 0.0, t],
    )
}

/// η₁ = P₁ and η_j = P_j/(1 − Σ_{l<j} P_l).
pub fn beamsplitter_cascade(probabilities: &[f64]) -> Result<Cascade> {
    let total: f64 = probabilities.iter().sum();
    if probabilities.iter().any(|&p| !(p >= 0.0)) || total > 1.0 + 1e-12 {
        return Err(Error::param("probabilities", "must be non-negative with sum ≤ 1"));
    }
    let mut etas = Vec::with_capacity(probabilities.len());
    let mut sorted = 0.0;
    for (j, &p) in probabilities.iter().enumerate() {
        let remaining = 1.0 - sorted;
        if remaining <= 0.0 {
            return Err(Error::CascadeExhausted { stage: j + 1 });
        }
        etas.push((p / remaining).min(1.0));
        sorted += p;
    }
    let matrices = etas.iter().map(|&e| beamsplitter_matrix(e)).collect();
    Ok(Cascade { etas, matrices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_examples() {
        assert_eq!(hg_occupation(0, 0, 0.0, 1.0), 1.0);
        assert_eq!(hg_occupation(1, 0, 0.0, 1.0), 0.0);
        assert_eq!(hg_occupation(0, 1, 0.0, 1.0), 0.0);
        assert!((hg_occupation(0, 0, PI / 3.0, 1.0) - 0.8).abs() < 1e-12);
        assert!((hg_occupation(0, 1, PI / 3.0, 1.0) - 0.144).abs() < 1e-12);
    }

    #[test]
    fn coefficient_matches_double_factorial() {
        // (2n−1)!!/(2ⁿ n!) for n = 0..5: 1, 1/2, 3/8, 15/48, 105/384, 945/3840.
        let exact = [1.0, 0.5, 0.375, 0.3125, 0.2734375, 0.24609375];
        for (n, e) in exact.iter().enumerate() {
            assert!((ln_hg_coefficient(n).exp() - e).abs() < 1e-15);
        }
        assert!(ln_hg_coefficient(5000).is_finite());
    }

    #[test]
    fn derivative_example() {
        let d = occupancy_derivative(1.0, 1.0);
        let expect = -2.0 * 1f64.sin().powi(3) / (1f64.cos().powi(2) + 1.0).powi(2);
        assert!((d - expect).abs() < 1e-14);
        assert!((d + 0.7138).abs() < 1e-3);
        assert_eq!(occupancy_derivative(0.0, 2.0), 0.0);
    }

    #[test]
    fn sequence_order() {
        let t = occupancy_sequence(0.3, 0.7, 6);
        let idx: Vec<_> = t.entries.iter().map(|e| (e.0, e.1)).collect();
        assert_eq!(idx, vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
        let one = occupancy_sequence(0.0, 1.0, 1);
        assert_eq!(one.entries.len(), 1);
        assert_eq!(one.entries[0].2, 1.0);
        assert_eq!(one.residual, 0.0);
    }

    #[test]
    fn aperture_far_field() {
        let g = aperture_geometry(1e-3, 5e-4, 1.0, 2.0 * PI * 1e11).unwrap();
        assert!(g.fresnel_number < 1e-12);
        assert!((g.chi - 1.0).abs() < 1e-9);
        let h = aperture_geometry(1e-3, 1e-3 / 8f64.sqrt(), 1.0, 2.0 * PI * 1e11).unwrap();
        assert!((h.chi - 0.5).abs() < 1e-9);
        let far = aperture_geometry(1e-3, 5e-4, 1e4, 2.0 * PI * 1e11).unwrap();
        assert!(far.fresnel_number > g.fresnel_number && far.hg_scale > g.hg_scale);
    }

    #[test]
    fn cascade_examples() {
        let c = beamsplitter_cascade(&[0.8]).unwrap();
        assert!((c.etas[0] - 0.8).abs() < 1e-15);
        let c = beamsplitter_cascade(&[0.5, 0.25, 0.125]).unwrap();
        for e in &c.etas {
            assert!((e - 0.5).abs() < 1e-15);
        }
        for b in &c.matrices {
            let i = b.transpose() * b;
            assert!((i - DMatrix::identity(4, 4)).amax() < 1e-12);
        }
        match beamsplitter_cascade(&[1.0, 0.0]) {
            Err(Error::CascadeExhausted { stage }) => assert_eq!(stage, 2),
            other => panic!("{other:?}"),
        }
    }
}
