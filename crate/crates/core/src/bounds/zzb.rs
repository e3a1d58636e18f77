//! Ziv-Zakai bound for a uniform prior of width Δφ centred on φ.
//!
//! Because Pr(x; x+ζ) is taken as non-increasing in ζ, the valley-filling
//! step is the identity and the bound reduces to
//!
//! full:         ∫₀^Δφ ζ (1/Δφ) ∫_{φ−Δφ/2}^{φ+Δφ/2−ζ} Pr(x; x+ζ) dx dζ
//! small prior:  ∫₀^Δφ ζ (1 − ζ/Δφ) Pr(φ; φ+ζ) dζ

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_panels, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZzbMode {
    Full,
    SmallPrior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZzbOptions {
    pub rel_tol: f64,
    pub max_evals: usize,
    /// Width of the first ζ-panel; later panels grow by 4× up to Δφ.
    /// Defaults to Δφ·4⁻¹² when unset. The error probability usually drops
    /// from ½ on a scale far below Δφ, which uniform panels would miss.
    pub finest_scale: Option<f64>,
}

impl Default for ZzbOptions {
    fn default() -> Self {
        ZzbOptions {
            rel_tol: 1e-4,
            max_evals: 15 * 2000,
            finest_scale: None,
        }
    }
}

impl ZzbOptions {
    pub fn with_scale(self, scale: f64) -> Self {
        ZzbOptions {
            finest_scale: Some(scale),
            ..self
        }
    }
}

/// 0, f, 4f, 16f, … , Δφ.
fn graded_breaks(prior_width: f64, finest: Option<f64>) -> Vec<f64> {
    let mut f = finest.unwrap_or(prior_width * 4f64.powi(-12));
    if !(f > 0.0) || f > 0.25 * prior_width {
        f = 0.25 * prior_width;
    }
    let mut breaks = vec![0.0];
    while f < 0.5 * prior_width {
        breaks.push(f);
        f *= 4.0;
    }
    breaks.push(prior_width);
    breaks
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZzbResult {
    /// Mean-square error bound, rad².
    pub value: f64,
    pub error: f64,
    /// Calls of the error-probability function.
    pub evaluations: usize,
}

/// Integrates the Ziv-Zakai bound for an error probability `pr(x, zeta)`.
///
/// The inner x-integral of the full mode runs at a tenth of the outer
/// tolerance; if it runs out of evaluations first, its estimate is still
/// used as long as the error is within the outer tolerance.
pub fn zzb<F>(mut pr: F, phi: f64, prior_width: f64, mode: ZzbMode, opts: &ZzbOptions) -> Result<ZzbResult>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    if !(prior_width > 0.0) {
        return Err(Error::param("prior_width", "must be positive"));
    }
    let dphi = prior_width;
    let lo = phi - 0.5 * dphi;
    let outer = QuadOptions {
        abs_tol: 0.0,
        rel_tol: opts.rel_tol,
        max_evals: opts.max_evals,
        initial_panels: 1,
    };
    let breaks = graded_breaks(dphi, opts.finest_scale);
    let inner = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 0.1 * opts.rel_tol,
        max_evals: opts.max_evals,
        initial_panels: 1,
    };
    let mut calls = 0usize;
    let mut checked = |x: f64, z: f64, calls: &mut usize| -> Result<f64> {
        *calls += 1;
        let p = pr(x, z)?;
        if !(p >= 0.0 && p <= 0.5 + 1e-12) {
            return Err(Error::Numerical(format!("error probability {p} outside [0, ½] at ζ = {z:e}")));
        }
        Ok(p)
    };
    let r = match mode {
        ZzbMode::SmallPrior => integrate_panels(
            |z| Ok(z * (1.0 - z / dphi) * checked(phi, z, &mut calls)?),
            &breaks,
            &outer,
        )?,
        ZzbMode::Full => integrate_panels(
            |z| {
                let hi = lo + dphi - z;
                if hi <= lo {
                    return Ok(0.0);
                }
                let value = match integrate(|x| checked(x, z, &mut calls), lo, hi, &inner) {
                    Ok(i) => i.value,
                    // Out of budget but already inside the outer tolerance.
                    Err(Error::Quadrature { estimate, error, .. }) if error <= opts.rel_tol * estimate.abs() => estimate,
                    Err(e) => return Err(e),
                };
                Ok(z * value / dphi)
            },
            &breaks,
            &outer,
        )?,
    };
    Ok(ZzbResult {
        value: r.value,
        error: r.error,
        evaluations: calls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn flat_prior_reference() {
        let dphi = PI / 100.0;
        for mode in [ZzbMode::Full, ZzbMode::SmallPrior] {
            let r = zzb(|_, _| Ok(0.5), 0.1, dphi, mode, &ZzbOptions::default()).unwrap();
            assert!((r.value / (dphi * dphi / 12.0) - 1.0).abs() < 1e-12, "{mode:?}");
        }
    }

    #[test]
    fn gaussian_tail() {
        // ∫₀^∞ ζ ½e^{−aζ²} dζ = 1/4a; the ζ/Δφ correction is O(1/√a Δφ).
        let dphi = PI / 100.0;
        let a = 1e4 / (dphi * dphi);
        let r = zzb(|_, z| Ok(0.5 * (-a * z * z).exp()), 0.1, dphi, ZzbMode::SmallPrior, &ZzbOptions::default())
            .unwrap();
        assert!((r.value * 4.0 * a - 1.0).abs() < 1e-2, "{}", r.value * 4.0 * a);
    }

    #[test]
    fn modes_agree_for_smooth_pr() {
        let dphi = PI / 100.0;
        let pr = |x: f64, z: f64| Ok(0.5 * (-(3e5 * (1.0 + 0.1 * x)) * z * z).exp());
        let f = zzb(pr, 0.1, dphi, ZzbMode::Full, &ZzbOptions::default()).unwrap();
        let s = zzb(pr, 0.1, dphi, ZzbMode::SmallPrior, &ZzbOptions::default()).unwrap();
        assert!((f.value / s.value - 1.0).abs() < 2e-2);
    }

    #[test]
    fn narrow_knee_is_resolved() {
        let dphi = PI / 100.0;
        for a in [1e8, 1e12, 1e14] {
            let r = zzb(|_, z| Ok(0.5 * (-a * z * z).exp()), 0.1, dphi, ZzbMode::SmallPrior, &ZzbOptions::default())
                .unwrap();
            // ∫₀^∞ ζ(1 − ζ/Δφ)·½e^{−aζ²} dζ; the tail beyond Δφ is negligible.
            let exact = 0.25 / a - PI.sqrt() / (8.0 * dphi * a.powf(1.5));
            assert!((r.value / exact - 1.0).abs() < 1e-6, "{a} {}", r.value / exact);
        }
    }

    #[test]
    fn breaks_are_increasing() {
        let b = graded_breaks(1.0, Some(1e-3));
        assert_eq!(b[0], 0.0);
        assert_eq!(*b.last().unwrap(), 1.0);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(graded_breaks(1.0, Some(10.0)), vec![0.0, 0.25, 1.0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(zzb(|_, _| Ok(0.5), 0.0, 0.0, ZzbMode::Full, &ZzbOptions::default()).is_err());
        assert!(zzb(|_, _| Ok(0.7), 0.0, 0.1, ZzbMode::SmallPrior, &ZzbOptions::default()).is_err());
    }
}
