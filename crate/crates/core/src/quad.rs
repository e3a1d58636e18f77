//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Evaluations used by one Kronrod panel.
pub const PANEL_EVALS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target, applied to |estimate|.
    pub rel_tol: f64,
    /// Hard cap on integrand evaluations.
    pub max_evals: usize,
    /// Equal panels the interval is split into before adapting.
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-8,
            max_evals: 15 * 2000,
            initial_panels: 1,
        }
    }
}

impl QuadOptions {
    pub fn relative(rel_tol: f64) -> Self {
        QuadOptions {
            rel_tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut fv = [(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv[j] = (f1, f2);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    // QUADPACK's error heuristic: scale |K - G| by the integrand's variation.
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv[j].0 - mean).abs() + (fv[j].1 - mean).abs());
    }
    let asc = asc * half.abs();
    let mut error = ((kron - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let value = kron * half;
    if !value.is_finite() {
        return Err(Error::Numerical(format!(
            "non-finite integrand on [{a:.6e}, {b:.6e}]"
        )));
    }
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate meets `max(abs_tol, rel_tol·|I|)`.
///
/// Fails with [`Error::Quadrature`] (carrying the best estimate) when the
/// evaluation budget runs out first.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let n0 = opts.initial_panels.max(1);
    let breaks: Vec<f64> = (0..=n0)
        .map(|k| if k == n0 { b } else { a + (b - a) * k as f64 / n0 as f64 })
        .collect();
    integrate_panels(f, &breaks, opts)
}

/// Like [`integrate`], with the initial panels given by increasing
/// `breaks`; `initial_panels` is ignored.
pub fn integrate_panels<F>(mut f: F, breaks: &[f64], opts: &QuadOptions) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if breaks.len() < 2 {
        return Err(Error::param("breaks", "need at least two breakpoints"));
    }
    let (a, b) = (breaks[0], breaks[breaks.len() - 1]);
    let mut panels = Vec::with_capacity(breaks.len() + 16);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            panels.push(kronrod(&mut f, w[0], w[1])?);
        }
    }
    let mut evals = panels.len() * PANEL_EVALS;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let tol = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= tol {
            return Ok(Integral {
                value,
                error,
                evaluations: evals,
            });
        }
        if evals + 2 * PANEL_EVALS > opts.max_evals {
            return Err(Error::Quadrature {
                lower: a,
                upper: b,
                estimate: value,
                error,
                tolerance: tol,
                evaluations: evals,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::Numerical(format!(
                "quadrature panel collapsed at {mid:.6e}; integrand may be singular"
            )));
        }
        panels.push(kronrod(&mut f, p.a, mid)?);
        panels.push(kronrod(&mut f, mid, p.b)?);
        evals += 2 * PANEL_EVALS;
    }
}
