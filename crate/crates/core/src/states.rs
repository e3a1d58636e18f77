//! Per-frequency Gaussian states of the radar receivers.
//!
//! Each constructor also attaches the closed-form Williamson decomposition of
//! the state it builds, so Chernoff evaluations in the frequency integrals do
//! not need a numerical eigen-solve. The closed forms are cross-checked
//! against [`williamson`](crate::gaussian::williamson) in tests.

use nalgebra::{DMatrix, DVector};

use crate::env::{per_mode_brightness, phase_sensitive_brightness, RadarScenario, C};
use crate::error::Result;
use crate::gaussian::{GaussianState, SymplecticSpectrum};
use crate::sorter::{beamsplitter_cascade, beamsplitter_matrix, hg_occupation, ApertureGeometry};

/// A phase split into a hypothesis-independent offset and a small
/// angle-bearing part. Keeping them apart stops the ~10⁶ rad time-of-flight
/// phase from swamping the differential phase in rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPhase {
    pub common: f64,
    pub offset: f64,
}

impl SplitPhase {
    pub fn value(&self) -> f64 {
        self.common + self.offset
    }

    /// (cos, sin) by angle addition.
    pub fn cos_sin(&self) -> (f64, f64) {
        let (sc, cc) = self.common.sin_cos();
        let (so, co) = self.offset.sin_cos();
        (cc * co - sc * so, sc * co + cc * so)
    }
}

/// Receiver phases at one frequency for one target angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSet {
    /// ξ⁻ = ξ − ω(τ − d sinφ/2c), classical mean at receiver 1.
    pub xi_minus: SplitPhase,
    /// ξ⁺ = ξ − ω(τ + d sinφ/2c), classical mean at receiver 2.
    pub xi_plus: SplitPhase,
    /// φ⁻ = ξ + ω(τ − d sinφ/2c), quantum correlation at receiver 1.
    pub phi_minus: SplitPhase,
    /// φ⁺ = ξ + ω(τ + d sinφ/2c), quantum correlation at receiver 2.
    pub phi_plus: SplitPhase,
    /// φ⁺ − φ⁻ = ω d sinφ/c.
    pub differential: f64,
}

impl PhaseSet {
    /// Phases at offset Ω (ω = ω₀ + Ω) for the scenario's target angle.
    pub fn new(scenario: &RadarScenario, omega: f64) -> Self {
        let w = scenario.carrier_angular_freq + omega;
        let tof = w * scenario.time_of_flight();
        let half = w * scenario.receiver_separation * scenario.target_angle.sin() / (2.0 * C);
        let xi = scenario.reflection_phase;
        let classical = xi - tof;
        let quantum = xi + tof;
        PhaseSet {
            xi_minus: SplitPhase { common: classical, offset: half },
            xi_plus: SplitPhase { common: classical, offset: -half },
            phi_minus: SplitPhase { common: quantum, offset: -half },
            phi_plus: SplitPhase { common: quantum, offset: half },
            differential: 2.0 * half,
        }
    }
}

/// Re[e^{iθ}(Z − iX)] = [[cos θ, sin θ], [sin θ, −cos θ]].
pub fn r_block(cos: f64, sin: f64) -> [[f64; 2]; 2] {
    [[cos, sin], [sin, -cos]]
}

/// Re[e^{iθ}(I + Y)] = [[cos θ, sin θ], [−sin θ, cos θ]].
pub fn w_block(cos: f64, sin: f64) -> [[f64; 2]; 2] {
    [[cos, sin], [-sin, cos]]
}

fn put(m: &mut DMatrix<f64>, bi: usize, bj: usize, scale: f64, b: [[f64; 2]; 2]) {
    for r in 0..2 {
        for c in 0..2 {
            m[(2 * bi + r, 2 * bj + c)] = scale * b[r][c];
        }
    }
}

/// Symplectic eigenvalues and squeezing of [[aI, cZ], [cZ, bI]].
fn two_mode_form(a: f64, b: f64, c: f64) -> (f64, f64, f64) {
    let root = ((a + b - 2.0 * c) * (a + b + 2.0 * c)).sqrt();
    let nu1 = 0.5 * (root + (a - b));
    let nu2 = 0.5 * (root - (a - b));
    let r = 0.5 * (2.0 * c / (a + b)).atanh();
    (nu1, nu2, r)
}

/// Two-mode squeezer on modes (i, j) of an n-mode identity.
fn squeezer(n: usize, i: usize, j: usize, r: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * n, 2 * n);
    let (ch, sh) = (r.cosh(), r.sinh());
    put(&mut s, i, i, ch, [[1.0, 0.0], [0.0, 1.0]]);
    put(&mut s, j, j, ch, [[1.0, 0.0], [0.0, 1.0]]);
    put(&mut s, i, j, sh, [[1.0, 0.0], [0.0, -1.0]]);
    put(&mut s, j, i, sh, [[1.0, 0.0], [0.0, -1.0]]);
    s
}

/// Orders a decomposition by descending eigenvalue.
fn sorted_spectrum(eigenvalues: Vec<f64>, s: DMatrix<f64>) -> SymplecticSpectrum {
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eigenvalues[j].total_cmp(&eigenvalues[i]));
    let mut out = DMatrix::zeros(s.nrows(), s.ncols());
    for (k, &j) in order.iter().enumerate() {
        out.set_column(2 * k, &s.column(2 * j));
        out.set_column(2 * k + 1, &s.column(2 * j + 1));
    }
    SymplecticSpectrum {
        eigenvalues: order.iter().map(|&j| eigenvalues[j]).collect(),
        symplectic_matrix: out,
    }
}

fn thermal_cov(n: usize, nb: f64) -> (DMatrix<f64>, SymplecticSpectrum) {
    let nu = 2.0 * nb + 1.0;
    (
        DMatrix::identity(2 * n, 2 * n) * nu,
        SymplecticSpectrum {
            eigenvalues: vec![nu; n],
            symplectic_matrix: DMatrix::identity(2 * n, 2 * n),
        },
    )
}

/// Classical coherent-pulse return at both receivers, bin Ω.
///
/// Mean 2√(S κ_eff)·(cos ξ⁻, sin ξ⁻, cos ξ⁺, sin ξ⁺); covariance (2N_B+1)I₄.
/// The amplitude 2√(Sκ) is the coherent amplitude of a mode with Sκ photons
/// in the q = a + a† convention.
pub fn dual_classical_state(scenario: &RadarScenario, omega: f64) -> GaussianState {
    let s = per_mode_brightness(omega, scenario);
    let ke = scenario.kappa_eff(scenario.target_angle);
    let amp = 2.0 * (s * ke).sqrt();
    let ph = PhaseSet::new(scenario, omega);
    let (c1, s1) = ph.xi_minus.cos_sin();
    let (c2, s2) = ph.xi_plus.cos_sin();
    let (cov, spectrum) = thermal_cov(2, scenario.noise_occupation);
    let mean = DVector::from_vec(vec![amp * c1, amp * s1, amp * c2, amp * s2]);
    GaussianState::new(mean, cov)
        .expect("thermal covariance is well-formed")
        .with_spectrum(spectrum)
}

/// Coefficients (A, B, C, D) of the three-mode quantum covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumBlocks {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl QuantumBlocks {
    pub fn new(scenario: &RadarScenario, omega: f64) -> Self {
        let s = per_mode_brightness(omega, scenario);
        let ke = scenario.kappa_eff(scenario.target_angle);
        let a = 2.0 * s + 1.0;
        QuantumBlocks {
            a,
            b: 2.0 * scenario.noise_occupation + 2.0 * ke * s + 1.0,
            c: 2.0 * ke.sqrt() * phase_sensitive_brightness(s),
            d: a * ke,
        }
    }
}

/// Idler plus both receiver returns of the entangled transmitter, bin Ω.
///
/// Blocks ordered (idler, rx1, rx2):
///
/// [[A I, C R_{φ⁻}, C R_{φ⁺}], [C R_{φ⁻}, B I, D W_{φ⁺−φ⁻}], [C R_{φ⁺}, D W_{φ⁻−φ⁺}, B I]].
pub fn dual_quantum_state(scenario: &RadarScenario, omega: f64) -> GaussianState {
    let k = QuantumBlocks::new(scenario, omega);
    let ph = PhaseSet::new(scenario, omega);
    let (cm, sm) = ph.phi_minus.cos_sin();
    let (cp, sp) = ph.phi_plus.cos_sin();
    let (sd, cd) = ph.differential.sin_cos();

    let mut v = DMatrix::zeros(6, 6);
    let eye = [[1.0, 0.0], [0.0, 1.0]];
    put(&mut v, 0, 0, k.a, eye);
    put(&mut v, 1, 1, k.b, eye);
    put(&mut v, 2, 2, k.b, eye);
    put(&mut v, 0, 1, k.c, r_block(cm, sm));
    put(&mut v, 1, 0, k.c, r_block(cm, sm));
    put(&mut v, 0, 2, k.c, r_block(cp, sp));
    put(&mut v, 2, 0, k.c, r_block(cp, sp));
    put(&mut v, 1, 2, k.d, w_block(cd, sd));
    put(&mut v, 2, 1, k.d, w_block(cd, -sd));

    // Rotating rx1 by W_{φ⁻} and rx2 by W_{φ⁺} removes every phase; a 50:50
    // mixer then splits the receivers into a sum mode, correlated with the
    // idler through √2·C, and an uncorrelated difference mode of variance B−D.
    let (nu1, nu2, r) = two_mode_form(k.a, k.b + k.d, std::f64::consts::SQRT_2 * k.c);
    let mut rot_t = DMatrix::identity(6, 6);
    put(&mut rot_t, 1, 1, 1.0, w_block(cm, -sm));
    put(&mut rot_t, 2, 2, 1.0, w_block(cp, -sp));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut mixer = DMatrix::identity(6, 6);
    put(&mut mixer, 1, 1, h, eye);
    put(&mut mixer, 1, 2, h, eye);
    put(&mut mixer, 2, 1, h, eye);
    put(&mut mixer, 2, 2, -h, eye);
    let s = rot_t * mixer * squeezer(3, 0, 1, r);
    let spectrum = sorted_spectrum(vec![nu1, nu2, k.b - k.d], s);

    GaussianState::new(DVector::zeros(6), v)
        .expect("assembled covariance is symmetric")
        .with_spectrum(spectrum)
}

/// Fundamental-mode occupancy P₁ = p_{0,0} at angle `x`.
pub fn fundamental_occupancy(aperture: &ApertureGeometry, x: f64) -> f64 {
    hg_occupation(0, 0, x, aperture.chi)
}

fn single_receiver_kappa(scenario: &RadarScenario, x: f64) -> f64 {
    // The single-receiver geometry fixes the compensation angle at zero.
    scenario.transmissivity * x.cos()
}

/// Fundamental and residual modes after a one-stage sorter, classical pulse.
///
/// The overall phase Ξ is taken from `reflection_phase`.
pub fn single_receiver_classical_state(
    scenario: &RadarScenario,
    aperture: &ApertureGeometry,
    x: f64,
    omega: f64,
) -> Result<GaussianState> {
    let p1 = fundamental_occupancy(aperture, x);
    let b1 = &beamsplitter_cascade(&[p1])?.matrices[0];
    let s = per_mode_brightness(omega, scenario);
    let amp = 2.0 * (s * single_receiver_kappa(scenario, x)).sqrt();
    let (sx, cx) = scenario.reflection_phase.sin_cos();
    let mean = b1 * DVector::from_vec(vec![amp * cx, amp * sx, 0.0, 0.0]);
    let (cov, spectrum) = thermal_cov(2, scenario.noise_occupation);
    Ok(GaussianState::new(mean, cov)?.with_spectrum(spectrum))
}

/// Idler, fundamental and residual modes after a one-stage sorter, entangled
/// transmitter. The central matrix
/// [[A I, 𝓒 R_Ξ, 0], [𝓒 R_Ξ, 𝓑 I, 0], [0, 0, 𝓑 I]] is conjugated by I₂ ⊕ B₁.
pub fn single_receiver_quantum_state(
    scenario: &RadarScenario,
    aperture: &ApertureGeometry,
    x: f64,
    omega: f64,
) -> Result<GaussianState> {
    let p1 = fundamental_occupancy(aperture, x);
    let eta = beamsplitter_cascade(&[p1])?.etas[0];
    let s = per_mode_brightness(omega, scenario);
    let k = single_receiver_kappa(scenario, x);
    let a = 2.0 * s + 1.0;
    let b = 2.0 * scenario.noise_occupation + 2.0 * k * s + 1.0;
    let c = 2.0 * k.sqrt() * phase_sensitive_brightness(s);
    let (sx, cx) = scenario.reflection_phase.sin_cos();

    let eye = [[1.0, 0.0], [0.0, 1.0]];
    let mut central = DMatrix::zeros(6, 6);
    put(&mut central, 0, 0, a, eye);
    put(&mut central, 1, 1, b, eye);
    put(&mut central, 2, 2, b, eye);
    put(&mut central, 0, 1, c, r_block(cx, sx));
    put(&mut central, 1, 0, c, r_block(cx, sx));

    let mut mix = DMatrix::identity(6, 6);
    mix.view_mut((2, 2), (4, 4)).copy_from(&beamsplitter_matrix(eta));
    let v = &mix * central * mix.transpose();
    let v = (&v + v.transpose()) * 0.5;

    let (nu1, nu2, r) = two_mode_form(a, b, c);
    let mut rot_t = DMatrix::identity(6, 6);
    put(&mut rot_t, 1, 1, 1.0, w_block(cx, -sx));
    let sm = mix * rot_t * squeezer(3, 0, 1, r);
    let spectrum = sorted_spectrum(vec![nu1, nu2, b], sm);
    Ok(GaussianState::new(DVector::zeros(6), v)?.with_spectrum(spectrum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::test_scenario;
    use crate::gaussian::{validate_state, williamson};

    fn check_attached(st: &GaussianState) {
        let sp = st.attached_spectrum().unwrap();
        let (rec, sym) = sp.residuals(&st.cov);
        assert!(rec < 1e-10 && sym < 1e-10, "rec {rec:e} sym {sym:e}");
        let num = williamson(&st.cov).unwrap();
        for (a, b) in sp.eigenvalues.iter().zip(&num.eigenvalues) {
            assert!((a - b).abs() < 1e-8 * a.max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn r_block_quarter_turn_is_x() {
        let (s, c) = (std::f64::consts::FRAC_PI_2).sin_cos();
        let r = r_block(c, s);
        assert!(r[0][0].abs() < 1e-15 && (r[0][1] - 1.0).abs() < 1e-15);
        assert!((r[1][0] - 1.0).abs() < 1e-15 && r[1][1].abs() < 1e-15);
        assert_eq!(r_block(1.0, 0.0), [[1.0, 0.0], [0.0, -1.0]]);
    }

    #[test]
    fn quantum_closed_form_matches_numeric() {
        let mut sc = test_scenario();
        for (ns, kappa, angle) in [(1e-2, 1e-3, 0.1), (0.5, 0.3, 0.4), (3.0, 0.05, -0.2)] {
            sc.signal_brightness = ns;
            sc.transmissivity = kappa;
            sc.target_angle = angle;
            for omega in [0.0, 1.3 * sc.bandwidth, -2.0 * sc.bandwidth] {
                let st = dual_quantum_state(&sc, omega);
                check_attached(&st);
                assert!(validate_state(&st).physical);
            }
        }
    }

    #[test]
    fn quantum_zero_kappa_is_block_diagonal() {
        let mut sc = test_scenario();
        sc.transmissivity = 0.0;
        let st = dual_quantum_state(&sc, 0.0);
        let s = per_mode_brightness(0.0, &sc);
        let sp = st.attached_spectrum().unwrap();
        let nb = 2.0 * sc.noise_occupation + 1.0;
        let mut expect = vec![2.0 * s + 1.0, nb, nb];
        expect.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in sp.eigenvalues.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
        for i in 0..2 {
            for j in 2..6 {
                assert_eq!(st.cov[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn zero_brightness_keeps_printed_receiver_correlation() {
        let mut sc = test_scenario();
        sc.signal_brightness = 0.0;
        let k = QuantumBlocks::new(&sc, 0.0);
        assert_eq!(k.a, 1.0);
        assert_eq!(k.c, 0.0);
        assert!((k.d - sc.kappa_eff(sc.target_angle)).abs() < 1e-18);
    }

    #[test]
    fn classical_mean_norm() {
        let sc = test_scenario();
        let st = dual_classical_state(&sc, 0.3 * sc.bandwidth);
        let s = per_mode_brightness(0.3 * sc.bandwidth, &sc);
        let ke = sc.kappa_eff(sc.target_angle);
        assert!((st.mean.norm_squared() - 8.0 * s * ke).abs() < 1e-15);
        let zero = dual_classical_state(&RadarScenario { transmissivity: 0.0, ..sc }, 0.0);
        assert_eq!(zero.mean.norm(), 0.0);
    }

    #[test]
    fn broadside_receivers_share_phase() {
        let mut sc = test_scenario();
        sc.target_angle = 0.0;
        sc.compensation_angle = 0.0;
        let st = dual_classical_state(&sc, 0.0);
        assert!((st.mean[0] - st.mean[2]).abs() < 1e-15);
        assert!((st.mean[1] - st.mean[3]).abs() < 1e-15);
    }

    #[test]
    fn mirror_angle_swaps_receivers() {
        let mut sc = test_scenario();
        sc.target_angle = 0.13;
        sc.compensation_angle = 0.05;
        let mirrored = RadarScenario {
            target_angle: -0.13,
            compensation_angle: -0.05,
            ..sc
        };
        let a = dual_quantum_state(&sc, 0.2 * sc.bandwidth);
        let b = dual_quantum_state(&mirrored, 0.2 * sc.bandwidth);
        let perm = [0, 1, 4, 5, 2, 3];
        for i in 0..6 {
            for j in 0..6 {
                assert!((a.cov[(i, j)] - b.cov[(perm[i], perm[j])]).abs() < 1e-9);
            }
        }
        let ca = dual_classical_state(&sc, 0.0);
        let cb = dual_classical_state(&mirrored, 0.0);
        for i in 0..4 {
            assert!((ca.mean[i] - cb.mean[[2, 3, 0, 1][i]]).abs() < 1e-9);
        }
    }

    #[test]
    fn single_receiver_states() {
        let sc = RadarScenario {
            transmissivity: 0.2,
            signal_brightness: 0.4,
            noise_occupation: 3.0,
            ..test_scenario()
        };
        let ap = crate::sorter::aperture_geometry(1e-3, 5e-4, 1.0, sc.carrier_angular_freq).unwrap();
        for x in [0.0, 0.4, 1.2] {
            let q = single_receiver_quantum_state(&sc, &ap, x, 0.0).unwrap();
            check_attached(&q);
            let c = single_receiver_classical_state(&sc, &ap, x, 0.0).unwrap();
            let s = per_mode_brightness(0.0, &sc);
            assert!((c.mean.norm_squared() - 4.0 * s * sc.transmissivity * x.cos()).abs() < 1e-12);
        }
        // χ = 1 at broadside: everything lands in the fundamental mode.
        let c = single_receiver_classical_state(&sc, &ap, 0.0, 0.0).unwrap();
        assert!(c.mean[2].abs() < 1e-12 && c.mean[3].abs() < 1e-12);
        let q = single_receiver_quantum_state(&sc, &ap, 0.0, 0.0).unwrap();
        for i in 0..2 {
            for j in 4..6 {
                assert!(q.cov[(i, j)].abs() < 1e-12);
            }
        }
    }
}
