//! JSON run configuration in engineering units.
//!
//! Every block is optional; missing fields take the W-band bistatic defaults
//! below. [`load_config`] fills the remaining either/or choices (noise from
//! a temperature, κ from a link budget) so that the echoed JSON reloads to
//! the same value.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::{NumericalOptions, QcbMethod, SChoice, ZzbMode, ZzbOptions};
use crate::env::{ghz_to_angular, planck_occupation, LinkBudget, RadarScenario};
use crate::error::{Error, Result};
use crate::sorter::{aperture_geometry, ApertureGeometry};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub grid: GridConfig,
    /// One axis for line sweeps, two for `advantage-map`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<Sweep>,
    pub planck: PlanckConfig,
    pub chernoff: ChernoffConfig,
    pub sorter: SorterConfig,
    pub compute: ComputeConfig,
    /// Output paths. Command-line flags win over these; never echoed.
    #[serde(skip_serializing)]
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: ScenarioConfig::default(),
            grid: GridConfig::default(),
            sweep: Vec::new(),
            planck: PlanckConfig::default(),
            chernoff: ChernoffConfig::default(),
            sorter: SorterConfig::default(),
            compute: ComputeConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub carrier_ghz: f64,
    pub bandwidth_ghz: f64,
    pub pulse_duration_s: f64,
    pub receiver_separation_m: f64,
    pub target_range_m: f64,
    pub target_angle_rad: f64,
    /// Defaults to the target angle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compensation_angle_rad: Option<f64>,
    pub reflection_phase_rad: f64,
    pub prior_width_rad: f64,
    pub signal_brightness: f64,
    /// N_B directly, or through `bath_temperature_k`; not both.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_occupation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bath_temperature_k: Option<f64>,
    /// κ directly, or through `link_budget`; not both.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transmissivity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub link_budget: Option<LinkBudgetConfig>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            carrier_ghz: 100.0,
            bandwidth_ghz: 5.0,
            pulse_duration_s: 1e-3,
            receiver_separation_m: 8.0,
            target_range_m: 500.0,
            target_angle_rad: 0.1,
            compensation_angle_rad: None,
            reflection_phase_rad: 0.0,
            prior_width_rad: PI / 100.0,
            signal_brightness: 0.01,
            noise_occupation: None,
            bath_temperature_k: None,
            transmissivity: None,
            link_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkBudgetConfig {
    pub antenna_area_m2: f64,
    pub cross_section_m2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Spectrum truncated at ±k_max·Δω.
    pub k_max: f64,
    /// Above this many bins the Chernoff sum becomes an integral.
    pub bin_cap: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            k_max: crate::env::DEFAULT_K_MAX,
            bin_cap: crate::env::DEFAULT_BIN_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    /// A scenario key such as `target_range_m`, or `snr_db`.
    pub axis: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default = "linear")]
    pub scale: Scale,
}

fn linear() -> Scale {
    Scale::Linear
}

/// Axes a sweep may name. `snr_db` retunes N_S.
pub const SWEEP_AXES: &[&str] = &[
    "carrier_ghz",
    "bandwidth_ghz",
    "pulse_duration_s",
    "receiver_separation_m",
    "target_range_m",
    "target_angle_rad",
    "compensation_angle_rad",
    "reflection_phase_rad",
    "prior_width_rad",
    "signal_brightness",
    "noise_occupation",
    "bath_temperature_k",
    "transmissivity",
    "snr_db",
];

impl Sweep {
    pub fn new(axis: &str, start: f64, stop: f64, points: usize, scale: Scale) -> Self {
        Sweep {
            axis: axis.to_string(),
            start,
            stop,
            points,
            scale,
        }
    }

    pub fn validate(&self, key: &str) -> Result<()> {
        if !SWEEP_AXES.contains(&self.axis.as_str()) {
            return Err(Error::config(
                &format!("{key}.axis"),
                format!("`{}` is not a scenario field (expected one of {})", self.axis, SWEEP_AXES.join(", ")),
            ));
        }
        if self.points < 2 {
            return Err(Error::config(&format!("{key}.points"), "points must be at least 2"));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::config(key, "start and stop must be finite"));
        }
        if self.scale == Scale::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(Error::config(key, "log sweeps need positive start and stop"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if i == n - 1 {
                    return self.stop;
                }
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlanckConfig {
    pub temperatures_k: Vec<f64>,
}

impl Default for PlanckConfig {
    fn default() -> Self {
        PlanckConfig {
            temperatures_k: vec![4.0, 50.0, 150.0, 300.0],
        }
    }
}

/// One curve of the s-landscape: κ, T_d and N_S override the scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernoffSet {
    pub transmissivity: f64,
    pub pulse_duration_s: f64,
    pub signal_brightness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChernoffConfig {
    pub sets: Vec<ChernoffSet>,
    /// Angle between the hypotheses, rad.
    pub separation_rad: f64,
    /// Frequency offset of the bin, rad/s.
    pub offset: f64,
    /// Points on the open interval (0, 1).
    pub s_points: usize,
}

impl Default for ChernoffConfig {
    fn default() -> Self {
        ChernoffConfig {
            sets: Vec::new(),
            separation_rad: PI / 3.0,
            offset: 0.0,
            s_points: 99,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SorterConfig {
    /// Aperture diameter over beam minor half-axis; one curve per entry.
    pub delta_over_r: Vec<f64>,
    pub minor_half_axis_m: f64,
}

impl Default for SorterConfig {
    fn default() -> Self {
        SorterConfig {
            delta_over_r: vec![2.0],
            minor_half_axis_m: 1e-3,
        }
    }
}

impl SorterConfig {
    pub fn aperture(&self, ratio: f64, scenario: &RadarScenario) -> Result<ApertureGeometry> {
        aperture_geometry(
            ratio * self.minor_half_axis_m,
            self.minor_half_axis_m,
            scenario.target_range,
            scenario.carrier_angular_freq,
        )
        .map_err(|e| Error::config("sorter", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Asymptotic,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ComputeConfig {
    /// Thread count; defaults to the available parallelism. Not echoed,
    /// since it never changes the output.
    #[serde(skip_serializing)]
    pub workers: Option<usize>,
    pub qcb_method: MethodChoice,
    pub zzb_mode: ZzbMode,
    pub zzb_rel_tol: f64,
    pub zzb_max_evals: usize,
    /// Sample budget of one continuous-mode Chernoff integral.
    pub chernoff_max_points: usize,
    /// Per-bin Chernoff parameter of the numerical bound.
    pub chernoff_s: SPolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SPolicy {
    /// s = ½ in every bin.
    Half,
    /// Minimize over s in every bin.
    Minimize,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        let z = ZzbOptions::default();
        ComputeConfig {
            workers: None,
            qcb_method: MethodChoice::Asymptotic,
            zzb_mode: ZzbMode::Full,
            zzb_rel_tol: z.rel_tol,
            zzb_max_evals: z.max_evals,
            chernoff_max_points: NumericalOptions::default().max_points,
            chernoff_s: SPolicy::Half,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<String>,
    pub svg: Option<String>,
}

fn positive(key: &str, what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(key, format!("{what} must be positive")))
    }
}

impl ScenarioConfig {
    /// Resolves the either/or choices, applying defaults N_B = 32, κ = 10⁻³.
    fn fill(&mut self) -> Result<()> {
        if self.compensation_angle_rad.is_none() {
            self.compensation_angle_rad = Some(self.target_angle_rad);
        }
        match (self.noise_occupation, self.bath_temperature_k) {
            (Some(_), Some(_)) => {
                return Err(Error::config(
                    "scenario.noise_occupation",
                    "give either noise_occupation or bath_temperature_k, not both",
                ))
            }
            (None, None) => self.noise_occupation = Some(32.0),
            _ => {}
        }
        match (self.transmissivity, self.link_budget) {
            (Some(_), Some(_)) => {
                return Err(Error::config(
                    "scenario.transmissivity",
                    "give either transmissivity or link_budget, not both",
                ))
            }
            (None, None) => self.transmissivity = Some(1e-3),
            _ => {}
        }
        Ok(())
    }

    /// N_B, from the Planck law when a temperature is given.
    pub fn noise(&self) -> Result<f64> {
        if let Some(t) = self.bath_temperature_k {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::config("scenario.bath_temperature_k", "bath temperature must be positive"));
            }
            return Ok(planck_occupation(ghz_to_angular(self.carrier_ghz), t));
        }
        let nb = self.noise_occupation.unwrap_or(32.0);
        positive("scenario.noise_occupation", "noise occupation", nb)?;
        Ok(nb)
    }

    pub fn kappa(&self) -> Result<f64> {
        if let Some(lb) = self.link_budget {
            positive("scenario.link_budget.antenna_area_m2", "antenna area", lb.antenna_area_m2)?;
            positive("scenario.link_budget.cross_section_m2", "cross section", lb.cross_section_m2)?;
            let budget = LinkBudget {
                antenna_area: lb.antenna_area_m2,
                cross_section: lb.cross_section_m2,
                range: self.target_range_m,
                carrier_angular_freq: ghz_to_angular(self.carrier_ghz),
            };
            return budget
                .kappa()
                .map_err(|e| Error::config("scenario.link_budget", e.to_string()));
        }
        let k = self.transmissivity.unwrap_or(1e-3);
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::config("scenario.transmissivity", "transmissivity must lie in (0, 1)"));
        }
        Ok(k)
    }

    /// SI scenario with every invariant checked; errors name the JSON key.
    pub fn build(&self) -> Result<RadarScenario> {
        for (key, what, v) in [
            ("carrier_ghz", "carrier", self.carrier_ghz),
            ("bandwidth_ghz", "bandwidth", self.bandwidth_ghz),
            ("pulse_duration_s", "pulse duration", self.pulse_duration_s),
            ("receiver_separation_m", "receiver separation", self.receiver_separation_m),
            ("target_range_m", "target range", self.target_range_m),
            ("prior_width_rad", "prior width", self.prior_width_rad),
            ("signal_brightness", "signal brightness", self.signal_brightness),
        ] {
            positive(&format!("scenario.{key}"), what, v)?;
        }
        let sc = RadarScenario {
            carrier_angular_freq: ghz_to_angular(self.carrier_ghz),
            bandwidth: ghz_to_angular(self.bandwidth_ghz),
            pulse_duration: self.pulse_duration_s,
            receiver_separation: self.receiver_separation_m,
            target_range: self.target_range_m,
            target_angle: self.target_angle_rad,
            compensation_angle: self.compensation_angle_rad.unwrap_or(self.target_angle_rad),
            reflection_phase: self.reflection_phase_rad,
            prior_width: self.prior_width_rad,
            signal_brightness: self.signal_brightness,
            noise_occupation: self.noise()?,
            transmissivity: self.kappa()?,
        };
        sc.validate().map_err(|e| match e {
            Error::InvalidParameter { key, constraint } => Error::Config {
                key: format!("scenario.{}", engineering_key(&key)),
                message: constraint,
            },
            other => other,
        })?;
        Ok(sc)
    }

    /// Sets one sweepable field (other than `snr_db`).
    pub fn set(&mut self, axis: &str, v: f64) -> Result<()> {
        match axis {
            "carrier_ghz" => self.carrier_ghz = v,
            "bandwidth_ghz" => self.bandwidth_ghz = v,
            "pulse_duration_s" => self.pulse_duration_s = v,
            "receiver_separation_m" => self.receiver_separation_m = v,
            "target_range_m" => self.target_range_m = v,
            "target_angle_rad" => self.target_angle_rad = v,
            "compensation_angle_rad" => self.compensation_angle_rad = Some(v),
            "reflection_phase_rad" => self.reflection_phase_rad = v,
            "prior_width_rad" => self.prior_width_rad = v,
            "signal_brightness" => self.signal_brightness = v,
            "noise_occupation" => {
                self.noise_occupation = Some(v);
                self.bath_temperature_k = None;
            }
            "bath_temperature_k" => {
                self.bath_temperature_k = Some(v);
                self.noise_occupation = None;
            }
            "transmissivity" => {
                self.transmissivity = Some(v);
                self.link_budget = None;
            }
            _ => return Err(Error::config("sweep.axis", format!("cannot set `{axis}`"))),
        }
        Ok(())
    }
}

/// Maps an SI field name to its JSON key.
fn engineering_key(key: &str) -> &str {
    match key {
        "carrier_angular_freq" => "carrier_ghz",
        "bandwidth" => "bandwidth_ghz",
        "pulse_duration" => "pulse_duration_s",
        "receiver_separation" => "receiver_separation_m",
        "target_range" => "target_range_m",
        "target_angle" => "target_angle_rad",
        "compensation_angle" => "compensation_angle_rad",
        "reflection_phase" => "reflection_phase_rad",
        "prior_width" => "prior_width_rad",
        other => other,
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg: RunConfig = serde_json::from_str(text).map_err(|e| {
            // serde reports unknown fields and type mismatches with the key name.
            Error::config("config", e.to_string())
        })?;
        cfg.scenario.fill()?;
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        self.scenario.build()?;
        for (i, s) in self.sweep.iter().enumerate() {
            s.validate(&format!("sweep[{i}]"))?;
        }
        if !(self.grid.k_max > 0.0) {
            return Err(Error::config("grid.k_max", "k_max must be positive"));
        }
        if self.grid.bin_cap == 0 {
            return Err(Error::config("grid.bin_cap", "bin cap must be positive"));
        }
        if !(self.compute.zzb_rel_tol > 0.0 && self.compute.zzb_rel_tol < 1.0) {
            return Err(Error::config("compute.zzb_rel_tol", "tolerance must lie in (0, 1)"));
        }
        if self.compute.workers == Some(0) {
            return Err(Error::config("compute.workers", "workers must be at least 1"));
        }
        if !(self.sorter.minor_half_axis_m > 0.0) {
            return Err(Error::config("sorter.minor_half_axis_m", "minor half-axis must be positive"));
        }
        if let Some(r) = self.sorter.delta_over_r.iter().find(|r| !(**r > 0.0)) {
            return Err(Error::config("sorter.delta_over_r", format!("ratio {r} must be positive")));
        }
        if self.chernoff.s_points < 1 {
            return Err(Error::config("chernoff.s_points", "need at least one s value"));
        }
        Ok(())
    }

    /// Single-line JSON of everything that determines the output.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn zzb_options(&self) -> ZzbOptions {
        ZzbOptions {
            rel_tol: self.compute.zzb_rel_tol,
            max_evals: self.compute.zzb_max_evals,
            finest_scale: None,
        }
    }

    pub fn method(&self) -> QcbMethod {
        match self.compute.qcb_method {
            MethodChoice::Asymptotic => QcbMethod::Asymptotic,
            MethodChoice::Numerical => QcbMethod::Numerical(NumericalOptions {
                k_max: self.grid.k_max,
                bin_cap: self.grid.bin_cap,
                max_points: self.compute.chernoff_max_points,
                s: match self.compute.chernoff_s {
                    SPolicy::Half => SChoice::Fixed(0.5),
                    SPolicy::Minimize => NumericalOptions::default().s,
                },
                ..NumericalOptions::default()
            }),
        }
    }
}

/// Reads, defaults and validates a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    RunConfig::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_uses_defaults() {
        let cfg = RunConfig::parse("{}").unwrap();
        let sc = cfg.scenario.build().unwrap();
        assert_eq!(sc.receiver_separation, 8.0);
        assert_eq!(sc.compensation_angle, 0.1);
        assert_eq!(sc.noise_occupation, 32.0);
        assert_eq!(sc.transmissivity, 1e-3);
    }

    #[test]
    fn echo_round_trips() {
        let text = r#"{"scenario": {"bath_temperature_k": 150, "link_budget": {"antenna_area_m2": 20, "cross_section_m2": 0.1}},
                       "sweep": [{"axis": "target_range_m", "start": 100, "stop": 1000, "points": 4, "scale": "log"}],
                       "compute": {"workers": 3, "qcb_method": "numerical"},
                       "output": {"csv": "x.csv"}}"#;
        let cfg = RunConfig::parse(text).unwrap();
        let back = RunConfig::parse(&cfg.echo()).unwrap();
        let expect = RunConfig {
            compute: ComputeConfig { workers: None, ..cfg.compute },
            output: OutputConfig::default(),
            ..cfg.clone()
        };
        assert_eq!(back, expect);
        assert_eq!(back.echo(), cfg.echo());
    }

    #[test]
    fn errors_name_the_key() {
        let e = RunConfig::parse(r#"{"scenario": {"bandwidth_ghz": -5}}"#).unwrap_err();
        assert!(e.is_input());
        let msg = e.to_string();
        assert!(msg.contains("bandwidth must be positive") && msg.contains("scenario.bandwidth_ghz"), "{msg}");

        let e = RunConfig::parse(r#"{"scenario": {"bandwith_ghz": 5}}"#).unwrap_err();
        assert!(e.to_string().contains("bandwith_ghz"));

        let e = RunConfig::parse(r#"{"sweep": [{"axis": "colour", "start": 0, "stop": 1, "points": 3}]}"#).unwrap_err();
        assert!(e.to_string().contains("sweep[0].axis"));

        let e = RunConfig::parse(r#"{"sweep": [{"axis": "snr_db", "start": 0, "stop": 1, "points": 1}]}"#).unwrap_err();
        assert!(e.to_string().contains("points"));

        let e = RunConfig::parse(r#"{"scenario": {"noise_occupation": 3, "bath_temperature_k": 10}}"#).unwrap_err();
        assert!(e.to_string().contains("noise_occupation"));

        let e = RunConfig::parse(r#"{"scenario": {"target_angle_rad": 1.0, "compensation_angle_rad": -1.0}}"#)
            .unwrap_err();
        assert!(e.to_string().contains("scenario.compensation_angle_rad"), "{e}");
    }

    #[test]
    fn sweep_values() {
        let s = Sweep::new("snr_db", -10.0, 10.0, 5, Scale::Linear);
        assert_eq!(s.values(), vec![-10.0, -5.0, 0.0, 5.0, 10.0]);
        let l = Sweep::new("target_range_m", 10.0, 1000.0, 3, Scale::Log).values();
        assert!((l[1] - 100.0).abs() < 1e-9 && l[2] == 1000.0);
    }

    #[test]
    fn temperature_gives_planck_noise() {
        let cfg = RunConfig::parse(r#"{"scenario": {"bath_temperature_k": 150}}"#).unwrap();
        let nb = cfg.scenario.build().unwrap().noise_occupation;
        assert!((nb - 30.75).abs() < 0.05);
    }
}
