//! Estimation bounds on the target angle: Cramér-Rao, Chernoff and
//! Ziv-Zakai, the SNR threshold and the resulting quantum advantage.

mod advantage;
mod crb;
mod fidelity;
mod qcb;
mod single;
mod threshold;
mod zzb;

use serde::{Deserialize, Serialize};

pub use advantage::{advantage_at_snr, dual_receiver_zzb, quantum_advantage, Advantage, QcbMethod};
pub use crb::{crb, qfi_closed_form, qfi_per_mode, qfi_total, upsilon, QfiTotal};
pub use fidelity::{theta_bar, theta_fidelity, ModeFidelity};
pub use qcb::{
    asymptotic_regime_violations, check_asymptotic_regime, qcb_asymptotic, qcb_numerical, AsymptoticQcb,
    BinSample, DualReceiver, FrequencyResolvedQcb, HypothesisStates, NumericalOptions, NumericalQcb,
    SChoice, SortedReceiver,
};
pub use single::{crb_bracket, fisher_bracket, gamma, single_receiver_bounds, SingleReceiver, SingleReceiverBounds};
pub use threshold::{inverse_y_exp, snr_threshold, zzb_asymptotes, ThresholdResult, ZzbAsymptotes};
pub use zzb::{zzb, ZzbMode, ZzbOptions, ZzbResult};

use crate::env::RadarScenario;

/// Transmitter type: coherent pulse or entangled signal-idler pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Classical,
    Quantum,
}

impl Kind {
    /// Multiplier of the classical Fisher information.
    pub fn fisher_factor(self) -> f64 {
        match self {
            Kind::Classical => 1.0,
            Kind::Quantum => 2.0,
        }
    }

    /// E/(SNR·Θ̄) in the long-pulse Chernoff bound ½e^{−E}.
    pub fn chernoff_factor(self) -> f64 {
        match self {
            Kind::Classical => 0.5,
            Kind::Quantum => 2.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Kind::Classical => "classical",
            Kind::Quantum => "quantum",
        }
    }
}

/// Which bound a curve holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    Ccrb,
    Qcrb,
    Czzb,
    Qzzb,
}

impl BoundKind {
    pub fn label(self) -> &'static str {
        match self {
            BoundKind::Ccrb => "ccrb",
            BoundKind::Qcrb => "qcrb",
            BoundKind::Czzb => "czzb",
            BoundKind::Qzzb => "qzzb",
        }
    }
}

/// A bound tabulated against a swept axis.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub axis_name: String,
    pub axis: Vec<f64>,
    pub kind: BoundKind,
    /// None for Cramér-Rao curves.
    pub method: Option<QcbMethod>,
    /// δφ², rad².
    pub values: Vec<f64>,
    pub scenario: RadarScenario,
}

impl BoundCurve {
    /// δφ²/δφ_ref².
    pub fn normalized(&self) -> Vec<f64> {
        let r = self.scenario.reference_mse();
        self.values.iter().map(|v| v / r).collect()
    }
}
