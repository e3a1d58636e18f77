//! Chernoff bounds on the error of telling two target angles apart.

use std::f64::consts::{LN_2, PI};

use log::{log, warn};

use super::fidelity::theta_bar;
use super::Kind;
use crate::env::{build_grid_capped, C, RadarScenario, SpectralGrid, DEFAULT_BIN_CAP, DEFAULT_K_MAX};
use crate::error::{Error, Result};
use crate::gaussian::{ChernoffPair, GaussianState, SSearch};
use crate::quad::{integrate, QuadOptions};
use crate::sorter::ApertureGeometry;
use crate::states::{
    dual_classical_state, dual_quantum_state, single_receiver_classical_state, single_receiver_quantum_state,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticQcb {
    pub theta_bar: f64,
    /// E in P ≤ ½e^{−E}.
    pub exponent: f64,
    pub log_bound: f64,
    pub bound: f64,
}

/// Long-pulse Chernoff bound ½exp(−SNR·Θ̄/2) (classical) or ½exp(−2·SNR·Θ̄)
/// (quantum) for hypotheses `phi` and `phi + zeta`.
pub fn qcb_asymptotic(phi: f64, zeta: f64, scenario: &RadarScenario, kind: Kind) -> AsymptoticQcb {
    let tb = theta_bar(phi, zeta, scenario);
    let exponent = kind.chernoff_factor() * scenario.snr() * tb;
    let log_bound = -LN_2 - exponent;
    AsymptoticQcb {
        theta_bar: tb,
        exponent,
        log_bound,
        bound: log_bound.exp(),
    }
}

/// Violations of κ ≤ 10⁻², N_S ≤ 0.1, N_B ≥ 10, where the long-pulse
/// exponents are derived.
pub fn asymptotic_regime_violations(scenario: &RadarScenario) -> Vec<String> {
    let mut out = Vec::new();
    if scenario.transmissivity > 1e-2 {
        out.push(format!("transmissivity {} > 1e-2", scenario.transmissivity));
    }
    if scenario.signal_brightness > 0.1 {
        out.push(format!("signal_brightness {} > 0.1", scenario.signal_brightness));
    }
    if scenario.noise_occupation < 10.0 {
        out.push(format!("noise_occupation {} < 10", scenario.noise_occupation));
    }
    out
}

/// Logs one warning per violated regime condition; returns whether the
/// scenario is inside the regime.
pub fn check_asymptotic_regime(scenario: &RadarScenario) -> bool {
    let v = asymptotic_regime_violations(scenario);
    for msg in &v {
        warn!("asymptotic Chernoff exponent used outside its regime: {msg}");
    }
    v.is_empty()
}

/// Settings of the frequency-resolved Chernoff bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericalOptions {
    pub k_max: f64,
    /// Above this many bins the product over bins becomes an integral.
    pub bin_cap: u64,
    pub s: SChoice,
    /// Absolute tolerance on ln P in continuous mode.
    pub log_tol: f64,
    pub rel_tol: f64,
    /// Integrand evaluations allowed per continuous-mode integral.
    pub max_points: usize,
}

impl Default for NumericalOptions {
    fn default() -> Self {
        NumericalOptions {
            k_max: DEFAULT_K_MAX,
            bin_cap: DEFAULT_BIN_CAP,
            s: SChoice::Minimize(SSearch { grid_points: 5, tol: 1e-3 }),
            log_tol: 1e-6,
            rel_tol: 1e-6,
            max_points: 513,
        }
    }
}

/// How the Chernoff parameter is picked in each bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SChoice {
    Minimize(SSearch),
    /// Any s ∈ (0, 1) gives a valid bound; ½ is the per-bin optimum for
    /// these states and costs one evaluation instead of a dozen.
    Fixed(f64),
}

/// Rounding noise of a single ln-trace. A continuous-mode integral cannot be
/// resolved more finely than this times the number of bins.
const BIN_ROUNDOFF: f64 = 4e-15;

const KRONROD_POINTS: usize = 21;
const MAX_PANELS: usize = 256;

/// One evaluated frequency bin (or quadrature node in continuous mode).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinSample {
    pub omega: f64,
    pub optimal_s: f64,
    /// ln Tr ρ₁^s ρ₂^{1−s} at the optimum.
    pub log_trace: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericalQcb {
    pub log_bound: f64,
    pub bound: f64,
    pub mode_count: u64,
    pub continuous: bool,
    /// Sorted by offset.
    pub samples: Vec<BinSample>,
}

/// Source of the per-bin states under a hypothesis angle.
pub trait HypothesisStates {
    fn state(&self, angle: f64, omega: f64) -> Result<GaussianState>;

    /// Change in differential arrival delay between the two hypotheses, s.
    /// The per-bin term oscillates in Ω with roughly this period⁻¹.
    fn delay_change(&self, _angle: f64, _zeta: f64) -> f64 {
        0.0
    }
}

/// Both receivers of the bistatic radar.
#[derive(Debug, Clone, Copy)]
pub struct DualReceiver<'a> {
    pub scenario: &'a RadarScenario,
    pub kind: Kind,
}

impl HypothesisStates for DualReceiver<'_> {
    fn state(&self, angle: f64, omega: f64) -> Result<GaussianState> {
        let sc = self.scenario.at_angle(angle);
        Ok(match self.kind {
            Kind::Classical => dual_classical_state(&sc, omega),
            Kind::Quantum => dual_quantum_state(&sc, omega),
        })
    }

    fn delay_change(&self, angle: f64, zeta: f64) -> f64 {
        self.scenario.receiver_separation * ((angle + zeta).sin() - angle.sin()).abs() / C
    }
}

/// Single receiver behind a one-stage mode sorter.
#[derive(Debug, Clone, Copy)]
pub struct SortedReceiver<'a> {
    pub scenario: &'a RadarScenario,
    pub aperture: &'a ApertureGeometry,
    pub kind: Kind,
}

impl HypothesisStates for SortedReceiver<'_> {
    fn state(&self, angle: f64, omega: f64) -> Result<GaussianState> {
        match self.kind {
            Kind::Classical => single_receiver_classical_state(self.scenario, self.aperture, angle, omega),
            Kind::Quantum => single_receiver_quantum_state(self.scenario, self.aperture, angle, omega),
        }
    }
}

/// Frequency-resolved Chernoff bound P ≤ ½∏_Ω Tr ρ₁^{s_Ω} ρ₂^{1−s_Ω}, with
/// s minimized separately in every bin.
#[derive(Debug, Clone)]
pub struct FrequencyResolvedQcb<M> {
    model: M,
    grid: SpectralGrid,
    pulse_duration: f64,
    half_span: f64,
    opts: NumericalOptions,
}

impl<M: HypothesisStates> FrequencyResolvedQcb<M> {
    pub fn new(model: M, scenario: &RadarScenario, opts: NumericalOptions) -> Result<Self> {
        if let SChoice::Fixed(s) = opts.s {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::param("s", "fixed Chernoff parameter must lie in (0, 1)"));
            }
        }
        let grid = build_grid_capped(scenario.pulse_duration, scenario.bandwidth, opts.k_max, opts.bin_cap)?;
        Ok(FrequencyResolvedQcb {
            model,
            half_span: grid.half_span(scenario.bandwidth),
            grid,
            pulse_duration: scenario.pulse_duration,
            opts,
        })
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    /// Absolute accuracy of ln P that can be asked of this bound, which is
    /// also the relative accuracy of P.
    pub fn log_precision(&self) -> f64 {
        if self.grid.continuous {
            let roundoff = BIN_ROUNDOFF * self.half_span * self.pulse_duration / PI;
            self.opts.log_tol.max(roundoff)
        } else {
            BIN_ROUNDOFF * self.grid.mode_count as f64
        }
    }

    fn bin(&self, x: f64, zeta: f64, omega: f64) -> Result<BinSample> {
        let a = self.model.state(x, omega)?;
        let b = self.model.state(x + zeta, omega)?;
        let pair = ChernoffPair::new(&a, &b)?;
        let (optimal_s, log_trace) = match self.opts.s {
            SChoice::Minimize(search) => {
                let r = pair.minimize(&search)?;
                (r.optimal_s, r.log_trace)
            }
            SChoice::Fixed(s) => (s, pair.log_trace(s)?),
        };
        Ok(BinSample {
            omega,
            optimal_s,
            log_trace,
        })
    }

    /// ln P for hypotheses `x` and `x + zeta`.
    pub fn log_bound(&self, x: f64, zeta: f64) -> Result<f64> {
        self.run(x, zeta, None)
    }

    /// Like [`log_bound`](Self::log_bound), also returning every evaluated bin.
    pub fn evaluate(&self, x: f64, zeta: f64) -> Result<NumericalQcb> {
        let mut samples = Vec::new();
        let log_bound = self.run(x, zeta, Some(&mut samples))?;
        samples.sort_by(|a, b| a.omega.total_cmp(&b.omega));
        Ok(NumericalQcb {
            log_bound,
            bound: log_bound.exp(),
            mode_count: self.grid.mode_count,
            continuous: self.grid.continuous,
            samples,
        })
    }

    fn run(&self, x: f64, zeta: f64, mut trace: Option<&mut Vec<BinSample>>) -> Result<f64> {
        if zeta == 0.0 {
            return Ok(-LN_2);
        }
        let mut record = |b: BinSample| {
            if let Some(t) = trace.as_deref_mut() {
                t.push(b);
            }
            b.log_trace
        };
        let total = if self.grid.continuous {
            let scale = self.pulse_duration / (2.0 * PI);
            // About two starting panels per oscillation of the integrand.
            let periods = self.half_span * self.model.delay_change(x, zeta) / PI;
            let panels = ((2.0 * periods).ceil() as usize).clamp(4, MAX_PANELS);
            let opts = QuadOptions {
                abs_tol: (self.opts.log_tol / scale).max(BIN_ROUNDOFF * 2.0 * self.half_span),
                rel_tol: self.opts.rel_tol,
                max_evals: self.opts.max_points.max(3 * KRONROD_POINTS * panels),
                initial_panels: panels,
            };
            let r = integrate(
                |w| Ok(record(self.bin(x, zeta, w)?)),
                -self.half_span,
                self.half_span,
                &opts,
            );
            match r {
                Ok(i) => scale * i.value,
                // Out of budget: keep the estimate when its error in ln P is
                // immaterial to P itself.
                Err(Error::Quadrature { estimate, error, evaluations, .. })
                    if scale * error <= 1e-2 || scale * estimate < -40.0 =>
                {
                    let level = if scale * error > 1e-3 { log::Level::Warn } else { log::Level::Debug };
                    log!(
                        level,
                        "continuous-mode Chernoff integral accepted at ln-error {:.3e} after {evaluations} points",
                        scale * error
                    );
                    scale * estimate
                }
                Err(e) => return Err(e),
            }
        } else {
            let mut sum = 0.0;
            for &w in self.grid.offsets() {
                sum += record(self.bin(x, zeta, w)?);
            }
            sum
        };
        Ok((total - LN_2).min(-LN_2))
    }
}

/// Frequency-resolved Chernoff bound for the bistatic radar with hypotheses
/// `phi` and `phi + zeta`.
pub fn qcb_numerical(
    phi: f64,
    zeta: f64,
    scenario: &RadarScenario,
    kind: Kind,
    opts: NumericalOptions,
) -> Result<NumericalQcb> {
    scenario.validate()?;
    FrequencyResolvedQcb::new(DualReceiver { scenario, kind }, scenario, opts)?.evaluate(phi, zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::test_scenario;

    fn small(sc: &RadarScenario) -> RadarScenario {
        // Δω·T_d ≈ 3000 keeps the explicit product cheap.
        RadarScenario {
            pulse_duration: 1e-7,
            ..*sc
        }
    }

    #[test]
    fn asymptotic_basics() {
        let sc = test_scenario();
        let z = qcb_asymptotic(0.1, 0.0, &sc, Kind::Quantum);
        assert_eq!(z.bound, 0.5);
        for &(phi, zeta) in &[(0.1, 1e-4), (0.3, 0.01), (-0.2, 0.02)] {
            let c = qcb_asymptotic(phi, zeta, &sc, Kind::Classical);
            let q = qcb_asymptotic(phi, zeta, &sc, Kind::Quantum);
            assert!((q.exponent / c.exponent - 4.0).abs() < 1e-12);
            assert!(q.bound <= c.bound);
        }
    }

    #[test]
    fn asymptotic_small_zeta_series() {
        let sc = test_scenario();
        let zeta = 1e-6;
        let tb = theta_bar(0.1, zeta, &sc);
        let ups = crate::bounds::upsilon(&sc);
        assert!((tb / (ups * zeta * zeta / 2.0) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn regime_guard() {
        let sc = test_scenario();
        assert!(asymptotic_regime_violations(&sc).is_empty());
        let out = RadarScenario { noise_occupation: 2.0, signal_brightness: 1.0, ..sc };
        assert_eq!(asymptotic_regime_violations(&out).len(), 2);
    }

    #[test]
    fn zero_separation_is_half() {
        let sc = small(&test_scenario());
        for kind in [Kind::Classical, Kind::Quantum] {
            let r = qcb_numerical(0.1, 0.0, &sc, kind, NumericalOptions::default()).unwrap();
            assert_eq!(r.bound, 0.5);
        }
    }

    #[test]
    fn explicit_and_continuous_agree() {
        let sc = small(&test_scenario());
        let explicit = NumericalOptions::default();
        let continuous = NumericalOptions { bin_cap: 1, ..explicit };
        for kind in [Kind::Classical, Kind::Quantum] {
            let a = qcb_numerical(0.1, 2e-4, &sc, kind, explicit).unwrap();
            let b = qcb_numerical(0.1, 2e-4, &sc, kind, continuous).unwrap();
            assert!(!a.continuous && b.continuous);
            let (la, lb) = (a.log_bound + LN_2, b.log_bound + LN_2);
            assert!((la / lb - 1.0).abs() < 1e-2, "{la} {lb}");
            assert!(b.samples.len() <= 513);
        }
    }

    #[test]
    fn per_bin_optimum_is_half() {
        let sc = small(&test_scenario());
        let r = qcb_numerical(0.1, 1e-4, &sc, Kind::Quantum, NumericalOptions::default()).unwrap();
        for b in r.samples.iter().filter(|b| b.omega.abs() < 2.0 * sc.bandwidth) {
            assert!((b.optimal_s - 0.5).abs() < 2e-3, "{b:?}");
        }
    }

    #[test]
    fn matches_asymptotic_in_regime() {
        // The entangled exponent carries corrections of relative order √N_S
        // and κ/(N_B N_S), so this needs a faint source in strong noise.
        let sc = RadarScenario {
            signal_brightness: 1e-4,
            noise_occupation: 100.0,
            ..test_scenario()
        };
        for kind in [Kind::Classical, Kind::Quantum] {
            for &zeta in &[1e-5, 1e-4, 5e-4, 3e-3] {
                let n = qcb_numerical(0.1, zeta, &sc, kind, NumericalOptions::default()).unwrap();
                let a = qcb_asymptotic(0.1, zeta, &sc, kind);
                let ratio = (n.log_bound + LN_2) / (a.log_bound + LN_2);
                assert!((ratio - 1.0).abs() < 0.05, "{kind:?} {zeta} {} {}", n.log_bound, a.log_bound);
            }
        }
    }
}
