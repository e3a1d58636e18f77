//! The figure-style subcommands. Each returns a table and a plot recipe;
//! sweep points run in parallel and are gathered by index.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use log::info;
use rayon::prelude::*;

use super::config::{RunConfig, Scale, Sweep};
use super::csv::{Cell, CsvTable};
use super::svg::PlotKind;
use crate::bounds::{
    advantage_at_snr, crb, dual_receiver_zzb, snr_threshold, Kind, SingleReceiver, ZzbMode,
};
use crate::env::{ghz_to_angular, planck_occupation, RadarScenario};
use crate::error::{Error, Result};
use crate::gaussian::{ChernoffPair, SSearch};
use crate::sorter::{occupancy_derivative, occupancy_sequence};
use crate::states::dual_quantum_state;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    Planck,
    BoundsSweep,
    AdvantageMap,
    ChernoffS,
    Occupancy,
    SingleReceiver,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Planck,
        Subcommand::BoundsSweep,
        Subcommand::AdvantageMap,
        Subcommand::ChernoffS,
        Subcommand::Occupancy,
        Subcommand::SingleReceiver,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Planck => "planck",
            Subcommand::BoundsSweep => "bounds-sweep",
            Subcommand::AdvantageMap => "advantage-map",
            Subcommand::ChernoffS => "chernoff-s",
            Subcommand::Occupancy => "occupancy",
            Subcommand::SingleReceiver => "single-receiver",
        }
    }

    /// Sweep used when the configuration gives none.
    fn default_sweep(self) -> Vec<Sweep> {
        match self {
            Subcommand::Planck => vec![Sweep::new("carrier_ghz", 1.0, 1000.0, 61, Scale::Log)],
            Subcommand::BoundsSweep => vec![Sweep::new("snr_db", -10.0, 30.0, 81, Scale::Linear)],
            Subcommand::AdvantageMap => vec![
                Sweep::new("target_range_m", 100.0, 2000.0, 16, Scale::Log),
                Sweep::new("pulse_duration_s", 1e-3, 1.0, 16, Scale::Log),
            ],
            Subcommand::ChernoffS => Vec::new(),
            Subcommand::Occupancy => vec![Sweep::new("target_angle_rad", 0.0, 1.5, 76, Scale::Linear)],
            Subcommand::SingleReceiver => vec![Sweep::new("snr_db", -10.0, 40.0, 51, Scale::Linear)],
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::config("subcommand", format!("unknown subcommand `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: CsvTable,
    pub plot: PlotKind,
}

/// Runs `sub` with `config`, on `config.compute.workers` threads.
pub fn run_subcommand(sub: Subcommand, config: &RunConfig) -> Result<RunOutput> {
    let mut cfg = config.clone();
    if cfg.sweep.is_empty() {
        cfg.sweep = sub.default_sweep();
    }
    for (i, s) in cfg.sweep.iter().enumerate() {
        s.validate(&format!("sweep[{i}]"))?;
    }
    let workers = cfg
        .compute
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    info!("{sub}: {workers} worker(s)");
    let mut out = pool.install(|| match sub {
        Subcommand::Planck => planck(&cfg),
        Subcommand::BoundsSweep => bounds_sweep(&cfg),
        Subcommand::AdvantageMap => advantage_map(&cfg),
        Subcommand::ChernoffS => chernoff_s(&cfg),
        Subcommand::Occupancy => occupancy(&cfg),
        Subcommand::SingleReceiver => single_receiver(&cfg),
    })?;
    let mut meta = vec![
        ("generator".to_string(), format!("qradar {VERSION}")),
        ("subcommand".to_string(), sub.name().to_string()),
        ("config".to_string(), cfg.echo()),
    ];
    meta.append(&mut out.table.metadata);
    out.table.metadata = meta;
    Ok(out)
}

/// Maps in parallel; the first failure in index order wins.
fn par_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Result<R> + Sync,
{
    let out: Vec<Result<R>> = items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    out.into_iter().collect()
}

fn expect_axis(cfg: &RunConfig, index: usize, allowed: &[&str]) -> Result<Vec<f64>> {
    let key = format!("sweep[{index}]");
    let s = cfg
        .sweep
        .get(index)
        .ok_or_else(|| Error::config(&key, format!("this subcommand needs a sweep over {}", allowed.join(" or "))))?;
    if !allowed.contains(&s.axis.as_str()) {
        return Err(Error::config(
            &format!("{key}.axis"),
            format!("expected {}, got `{}`", allowed.join(" or "), s.axis),
        ));
    }
    Ok(s.values())
}

fn row(cells: impl IntoIterator<Item = Cell>) -> Vec<Cell> {
    cells.into_iter().collect()
}

fn planck(cfg: &RunConfig) -> Result<RunOutput> {
    let freqs = expect_axis(cfg, 0, &["carrier_ghz"])?;
    if cfg.planck.temperatures_k.is_empty() {
        return Err(Error::config("planck.temperatures_k", "need at least one temperature"));
    }
    if let Some(t) = cfg.planck.temperatures_k.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(Error::config("planck.temperatures_k", format!("temperature {t} must be non-negative")));
    }
    if let Some(f) = freqs.iter().find(|f| !(**f > 0.0)) {
        return Err(Error::config("sweep[0]", format!("frequency {f} GHz must be positive")));
    }
    let mut t = CsvTable::new(&["temperature_k", "frequency_ghz", "noise_occupation"]);
    for &temp in &cfg.planck.temperatures_k {
        for &f in &freqs {
            let nb = planck_occupation(ghz_to_angular(f), temp);
            t.push(row([temp.into(), f.into(), nb.into()]));
        }
    }
    Ok(RunOutput {
        table: t,
        plot: PlotKind::Line {
            x: "frequency_ghz".into(),
            y: vec!["noise_occupation".into()],
            group: Some("temperature_k".into()),
            log_x: true,
            log_y: true,
        },
    })
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn bounds_sweep(cfg: &RunConfig) -> Result<RunOutput> {
    let snr_db = expect_axis(cfg, 0, &["snr_db"])?;
    let sc = cfg.scenario.build()?;
    let th = snr_threshold(&sc)?;
    let reference = sc.reference_mse();
    let method = cfg.method();
    let mode = cfg.compute.zzb_mode;
    let opts = cfg.zzb_options();

    // The threshold itself is an extra, marked row.
    let mut points: Vec<(f64, bool)> = snr_db.iter().map(|&d| (d, false)).collect();
    points.push((th.snr_db, true));
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let rows = par_map(&points, |_, &(db, marked)| {
        let snr = db_to_linear(db);
        let tuned = sc.with_snr(snr);
        let c = dual_receiver_zzb(&tuned, Kind::Classical, method, mode, &opts)?;
        let q = dual_receiver_zzb(&tuned, Kind::Quantum, method, mode, &opts)?;
        let cs = dual_receiver_zzb(&tuned, Kind::Classical, method, ZzbMode::SmallPrior, &opts)?;
        let qs = dual_receiver_zzb(&tuned, Kind::Quantum, method, ZzbMode::SmallPrior, &opts)?;
        let ccrb = crb(&tuned, Kind::Classical);
        let qcrb = crb(&tuned, Kind::Quantum);
        let values = [ccrb, qcrb, c.value, q.value, cs.value, qs.value];
        let mut r = vec![db.into(), snr.into(), tuned.signal_brightness.into()];
        r.extend(values.iter().map(|&v| Cell::Num(v)));
        r.extend(values.iter().map(|&v| Cell::Num(v / reference)));
        r.push(Cell::Int(marked as i64));
        Ok(r)
    })?;
    let names = ["ccrb", "qcrb", "czzb", "qzzb", "czzb_small_prior", "qzzb_small_prior"];
    let mut columns = vec!["snr_db".to_string(), "snr".into(), "signal_brightness".into()];
    columns.extend(names.iter().map(|n| n.to_string()));
    columns.extend(names.iter().map(|n| format!("{n}_norm")));
    columns.push("is_threshold".into());
    let mut t = CsvTable::new(&columns);
    t.meta("reference_mse", format!("{reference:.14e}"));
    t.meta("snr_threshold_db", format!("{:.14e}", th.snr_db));
    t.meta("zzb_mode", format!("{mode:?}"));
    for r in rows {
        t.push(r);
    }
    Ok(RunOutput {
        table: t,
        plot: PlotKind::Line {
            x: "snr_db".into(),
            y: names.iter().map(|n| format!("{n}_norm")).collect(),
            group: None,
            log_x: false,
            log_y: true,
        },
    })
}

fn advantage_map(cfg: &RunConfig) -> Result<RunOutput> {
    if cfg.sweep.len() != 2 {
        return Err(Error::config("sweep", "advantage-map needs exactly two sweep axes"));
    }
    let (ax, ay) = (&cfg.sweep[0], &cfg.sweep[1]);
    for (i, s) in [ax, ay].iter().enumerate() {
        if s.axis == "snr_db" {
            return Err(Error::config(&format!("sweep[{i}].axis"), "the SNR is fixed at the threshold here"));
        }
    }
    if ax.axis == ay.axis {
        return Err(Error::config("sweep[1].axis", "the two axes must differ"));
    }
    let mut grid = Vec::new();
    for &x in &ax.values() {
        for &y in &ay.values() {
            grid.push((x, y));
        }
    }
    let method = cfg.method();
    let opts = cfg.zzb_options();
    let total = grid.len();
    let rows = par_map(&grid, |i, &(x, y)| {
        let mut s = cfg.scenario.clone();
        s.set(&ax.axis, x)?;
        s.set(&ay.axis, y)?;
        let sc = s.build()?;
        let th = snr_threshold(&sc)?;
        let a = advantage_at_snr(&sc, th.snr, method, ZzbMode::Full, &opts)?;
        info!(
            "point {}/{total}: {} = {x:.4e}, {} = {y:.4e}: {:.3} dB",
            i + 1,
            ax.axis,
            ay.axis,
            a.advantage_db
        );
        Ok(row([
            x.into(),
            y.into(),
            sc.transmissivity.into(),
            sc.noise_occupation.into(),
            a.signal_brightness.into(),
            th.snr_db.into(),
            a.classical.value.into(),
            a.quantum.value.into(),
            a.advantage_db.into(),
        ]))
    })?;
    let mut t = CsvTable::new(&[
        ax.axis.as_str(),
        ay.axis.as_str(),
        "transmissivity",
        "noise_occupation",
        "signal_brightness",
        "snr_threshold_db",
        "czzb",
        "qzzb",
        "advantage_db",
    ]);
    for r in rows {
        t.push(r);
    }
    Ok(RunOutput {
        table: t,
        plot: PlotKind::Heatmap {
            x: ax.axis.clone(),
            y: ay.axis.clone(),
            value: "advantage_db".into(),
            log_x: ax.scale == Scale::Log,
            log_y: ay.scale == Scale::Log,
        },
    })
}

fn chernoff_s(cfg: &RunConfig) -> Result<RunOutput> {
    let c = &cfg.chernoff;
    if c.sets.is_empty() {
        return Err(Error::config("chernoff.sets", "list at least one parameter set"));
    }
    let base = cfg.scenario.build()?;
    let n = c.s_points;
    let s_values: Vec<f64> = (1..=n).map(|k| k as f64 / (n + 1) as f64).collect();
    let per_set = par_map(&c.sets, |i, set| {
        let mut s = cfg.scenario.clone();
        s.transmissivity = Some(set.transmissivity);
        s.link_budget = None;
        s.pulse_duration_s = set.pulse_duration_s;
        s.signal_brightness = set.signal_brightness;
        let sc = s
            .build()
            .map_err(|e| Error::config(&format!("chernoff.sets[{i}]"), e.to_string()))?;
        let x = sc.target_angle;
        let first = dual_quantum_state(&sc.at_angle(x), c.offset);
        let second = dual_quantum_state(&sc.at_angle(x + c.separation_rad), c.offset);
        let pair = ChernoffPair::new(&first, &second)?;
        let best = pair.minimize(&SSearch::default())?;
        let mut rows = Vec::with_capacity(n);
        for &sv in &s_values {
            let lt = pair.log_trace(sv)?;
            rows.push(row([
                Cell::Int(i as i64),
                set.transmissivity.into(),
                set.pulse_duration_s.into(),
                set.signal_brightness.into(),
                sv.into(),
                (0.5 * lt.exp()).into(),
                lt.into(),
                best.optimal_s.into(),
                best.bound_value.into(),
            ]));
        }
        Ok(rows)
    })?;
    let mut t = CsvTable::new(&[
        "set",
        "transmissivity",
        "pulse_duration_s",
        "signal_brightness",
        "s",
        "bound",
        "log_trace",
        "argmin_s",
        "min_bound",
    ]);
    t.meta("separation_rad", format!("{:.14e}", c.separation_rad));
    t.meta("offset", format!("{:.14e}", c.offset));
    t.meta("target_angle_rad", format!("{:.14e}", base.target_angle));
    for r in per_set.into_iter().flatten() {
        t.push(r);
    }
    Ok(RunOutput {
        table: t,
        plot: PlotKind::Line {
            x: "s".into(),
            y: vec!["bound".into()],
            group: Some("set".into()),
            log_x: false,
            log_y: false,
        },
    })
}

fn occupancy(cfg: &RunConfig) -> Result<RunOutput> {
    let phis = expect_axis(cfg, 0, &["target_angle_rad"])?;
    if let Some(p) = phis.iter().find(|p| !(p.abs() < PI / 2.0)) {
        return Err(Error::config("sweep[0]", format!("angle {p} must lie inside (−π/2, π/2)")));
    }
    let sc = cfg.scenario.build()?;
    let mut t = CsvTable::new(&[
        "delta_over_r",
        "chi",
        "fresnel_number",
        "target_angle_rad",
        "p00",
        "p10",
        "p01",
        "residual",
        "dp00_dphi",
    ]);
    for &ratio in &cfg.sorter.delta_over_r {
        let ap = cfg.sorter.aperture(ratio, &sc)?;
        let rows = par_map(&phis, |_, &phi| {
            let table = occupancy_sequence(phi, ap.chi, 3);
            let p = table.probabilities();
            Ok(row([
                ratio.into(),
                ap.chi.into(),
                ap.fresnel_number.into(),
                phi.into(),
                p[0].into(),
                p[1].into(),
                p[2].into(),
                table.residual.into(),
                occupancy_derivative(phi, ap.chi).into(),
            ]))
        })?;
        for r in rows {
            t.push(r);
        }
    }
    Ok(RunOutput {
        table: t,
        plot: PlotKind::Line {
            x: "target_angle_rad".into(),
            y: vec!["p00".into(), "p10".into(), "p01".into()],
            group: Some("delta_over_r".into()),
            log_x: false,
            log_y: false,
        },
    })
}

fn single_receiver(cfg: &RunConfig) -> Result<RunOutput> {
    let snr_db = expect_axis(cfg, 0, &["snr_db"])?;
    let mut s = cfg.scenario.clone();
    // The single receiver faces straight up.
    s.compensation_angle_rad = Some(0.0);
    let sc: RadarScenario = s.build()?;
    let ratio = *cfg
        .sorter
        .delta_over_r
        .first()
        .ok_or_else(|| Error::config("sorter.delta_over_r", "need one aperture ratio"))?;
    let ap = cfg.sorter.aperture(ratio, &sc)?;
    let mode = cfg.compute.zzb_mode;
    let opts = cfg.zzb_options();
    let reference = sc.reference_mse();
    let rows = par_map(&snr_db, |_, &db| {
        let snr = db_to_linear(db);
        let tuned = sc.with_snr(snr);
        let c = SingleReceiver { scenario: &tuned, aperture: &ap, kind: Kind::Classical };
        let q = SingleReceiver { kind: Kind::Quantum, ..c };
        let values = [c.crb()?, q.crb()?, c.zzb(mode, &opts)?.value, q.zzb(mode, &opts)?.value];
        let mut r = vec![db.into(), snr.into()];
        r.extend(values.iter().map(|&v| Cell::Num(v)));
        r.extend(values.iter().map(|&v| Cell::Num(v / reference)));
        Ok(r)
    })?;
    let names = ["ccrb", "qcrb", "czzb", "qzzb"];
    let mut columns = vec!["snr_db".to_string(), "snr".into()];
    columns.extend(names.iter().map(|n| n.to_string()));
    columns.extend(names.iter().map(|n| format!("{n}_norm")));
    let mut t = CsvTable::new(&columns);
    t.meta("reference_mse", format!("{reference:.14e}"));
    t.meta("compensation_angle_rad", "0 (fixed for the single receiver)");
    t.meta("chi", format!("{:.14e}", ap.chi));
    t.meta("zzb_mode", format!("{mode:?}"));
    for r in rows {
        t.push(r);
    }
    Ok(RunOutput {
        table: t,
        plot: PlotKind::Line {
            x: "snr_db".into(),
            y: names.iter().map(|n| format!("{n}_norm")).collect(),
            group: None,
            log_x: false,
            log_y: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> RunConfig {
        RunConfig::parse(text).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for s in Subcommand::ALL {
            assert_eq!(s.name().parse::<Subcommand>().unwrap(), s);
        }
        assert!("plank".parse::<Subcommand>().is_err());
    }

    #[test]
    fn planck_row_at_w_band() {
        let c = cfg(r#"{"sweep": [{"axis": "carrier_ghz", "start": 50, "stop": 100, "points": 2}],
                        "planck": {"temperatures_k": [150]}}"#);
        let out = run_subcommand(Subcommand::Planck, &c).unwrap();
        let nb = out.table.column("noise_occupation").unwrap();
        assert!((nb[1] - 30.75).abs() < 0.05);
        assert!(out.table.metadata.iter().any(|(k, _)| k == "config"));
    }

    #[test]
    fn bounds_sweep_has_threshold_row() {
        let c = cfg(r#"{"sweep": [{"axis": "snr_db", "start": -5, "stop": 25, "points": 7}], "compute": {"workers": 2}}"#);
        let t = run_subcommand(Subcommand::BoundsSweep, &c).unwrap().table;
        assert_eq!(t.rows.len(), 8);
        let marks = t.column("is_threshold").unwrap();
        let db = t.column("snr_db").unwrap();
        let i = marks.iter().position(|m| *m == 1.0).unwrap();
        assert!((db[i] - 4.9).abs() < 0.3, "{}", db[i]);
        assert!(db.windows(2).all(|w| w[0] <= w[1]));
        for v in t.column("qzzb_norm").unwrap() {
            assert!(v <= 1.0 + 1e-4);
        }
    }

    #[test]
    fn wrong_axis_is_a_config_error() {
        let c = cfg(r#"{"sweep": [{"axis": "target_range_m", "start": 1, "stop": 2, "points": 2}]}"#);
        let e = run_subcommand(Subcommand::BoundsSweep, &c).unwrap_err();
        assert!(e.is_input() && e.to_string().contains("sweep[0].axis"), "{e}");
        let e = run_subcommand(Subcommand::ChernoffS, &RunConfig::default()).unwrap_err();
        assert!(e.to_string().contains("chernoff.sets"));
    }

    #[test]
    fn occupancy_fundamental_dominates_near_axis() {
        let c = cfg(r#"{"scenario": {"target_range_m": 10000},
                        "sweep": [{"axis": "target_angle_rad", "start": 0, "stop": 0.2, "points": 3}]}"#);
        let t = run_subcommand(Subcommand::Occupancy, &c).unwrap().table;
        let (p00, p10, p01) = (t.column("p00").unwrap(), t.column("p10").unwrap(), t.column("p01").unwrap());
        for i in 0..3 {
            assert!(p00[i] > p10[i] && p00[i] > p01[i]);
        }
    }
}
