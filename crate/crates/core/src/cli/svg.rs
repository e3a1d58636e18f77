//! Minimal self-contained SVG plots of a [`CsvTable`].
//!
//! Text uses the generic `sans-serif` family so no font is embedded or
//! fetched. Output depends only on the table, so equal tables give equal
//! bytes.

use std::fmt::Write as _;

use super::csv::{Cell, CsvTable};
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub enum PlotKind {
    /// One polyline per `y` column against column `x`, and per distinct
    /// value of `group` when given.
    Line { x: String, y: Vec<String>, group: Option<String>, log_x: bool, log_y: bool },
    /// Colour-mapped grid of `value` over the distinct `x` and `y` values.
    Heatmap { x: String, y: String, value: String, log_x: bool, log_y: bool },
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Option<Axis> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return None;
        }
        if hi - lo < 1e-12 * (1.0 + lo.abs()) {
            lo -= 0.5;
            hi += 0.5;
        }
        Some(Axis { lo, hi, log })
    }

    /// Position in [0, 1], or None for values the axis cannot show.
    fn unit(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        (0..=4)
            .map(|i| {
                let t = i as f64 / 4.0;
                let v = self.lo + t * (self.hi - self.lo);
                let label = if self.log { format!("1e{v:.1}") } else { format!("{v:.3e}") };
                (t, label)
            })
            .collect()
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let _ = writeln!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
}

fn frame(out: &mut String, xa: &Axis, ya: &Axis, xlabel: &str, ylabel: &str) {
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let _ = writeln!(out, "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"black\"/>");
    for (t, label) in xa.ticks() {
        let x = LEFT + t * pw;
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{label}</text>",
            TOP + ph + 16.0
        );
    }
    for (t, label) in ya.ticks() {
        let y = TOP + (1.0 - t) * ph;
        let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{y:.2}\" text-anchor=\"end\">{label}</text>", LEFT - 4.0);
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        LEFT + pw / 2.0,
        HEIGHT - 20.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        "<text x=\"14\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2})\">{}</text>",
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(ylabel)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn column(table: &CsvTable, name: &str) -> Result<Vec<f64>> {
    table
        .column(name)
        .ok_or_else(|| Error::config("svg", format!("table has no column `{name}`")))
}

/// Renders `table`; an empty table is an input error.
pub fn render_svg(table: &CsvTable, kind: &PlotKind) -> Result<String> {
    if table.rows.is_empty() {
        return Err(Error::config("svg", "cannot plot an empty table"));
    }
    let mut out = String::new();
    header(&mut out);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    match kind {
        PlotKind::Line { x, y, group, log_x, log_y } => {
            let xs = column(table, x)?;
            let ys = y.iter().map(|c| column(table, c)).collect::<Result<Vec<_>>>()?;
            let xa = Axis::fit(xs.iter().copied(), *log_x)
                .ok_or_else(|| Error::config("svg", format!("column `{x}` has nothing to plot")))?;
            let ya = Axis::fit(ys.iter().flatten().copied(), *log_y)
                .ok_or_else(|| Error::config("svg", "value columns have nothing to plot"))?;
            frame(&mut out, &xa, &ya, x, if y.len() == 1 { &y[0] } else { "" });
            // Row sets in order of first appearance of each group value.
            let groups: Vec<(String, Vec<usize>)> = match group {
                None => vec![(String::new(), (0..table.rows.len()).collect())],
                Some(g) => {
                    let gi = table
                        .column_index(g)
                        .ok_or_else(|| Error::config("svg", format!("table has no column `{g}`")))?;
                    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
                    for (r, cells) in table.rows.iter().enumerate() {
                        let key = match &cells[gi] {
                            Cell::Num(v) => format!("{v}"),
                            Cell::Int(v) => v.to_string(),
                            Cell::Text(t) => t.clone(),
                        };
                        match out.iter_mut().find(|(k, _)| *k == key) {
                            Some((_, rows)) => rows.push(r),
                            None => out.push((key, vec![r])),
                        }
                    }
                    out
                }
            };
            let mut k = 0;
            for (gname, rows) in &groups {
                for (name, col) in y.iter().zip(&ys) {
                    let colour = PALETTE[k % PALETTE.len()];
                    let mut pts = String::new();
                    for &r in rows {
                        if let (Some(u), Some(v)) = (xa.unit(xs[r]), ya.unit(col[r])) {
                            let _ = write!(pts, "{:.2},{:.2} ", LEFT + u * pw, TOP + (1.0 - v) * ph);
                        }
                    }
                    let _ = writeln!(
                        out,
                        "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>",
                        pts.trim_end()
                    );
                    let label = match group {
                        Some(g) => format!("{name} {g}={gname}"),
                        None => name.clone(),
                    };
                    let ly = TOP + 14.0 * (k as f64 + 1.0);
                    let lx = WIDTH - RIGHT + 10.0;
                    let _ = writeln!(
                        out,
                        "<line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{colour}\" stroke-width=\"2\"/>",
                        ly - 4.0,
                        lx + 18.0,
                        ly - 4.0
                    );
                    let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{ly:.2}\">{}</text>", lx + 22.0, escape(&label));
                    k += 1;
                }
            }
        }
        PlotKind::Heatmap { x, y, value, log_x, log_y } => {
            let xs = column(table, x)?;
            let ys = column(table, y)?;
            let vs = column(table, value)?;
            let distinct = |v: &[f64]| {
                let mut d: Vec<f64> = v.to_vec();
                d.sort_by(|a, b| a.total_cmp(b));
                d.dedup();
                d
            };
            let (gx, gy) = (distinct(&xs), distinct(&ys));
            let va = Axis::fit(vs.iter().copied(), false)
                .ok_or_else(|| Error::config("svg", format!("column `{value}` has nothing to plot")))?;
            // Cells are drawn on index axes so uneven (e.g. log) grids tile.
            let cw = pw / gx.len() as f64;
            let chh = ph / gy.len() as f64;
            for ((&xv, &yv), &v) in xs.iter().zip(&ys).zip(&vs) {
                let i = gx.partition_point(|g| *g < xv);
                let j = gy.partition_point(|g| *g < yv);
                let fill = va.unit(v).map(colour_map).unwrap_or_else(|| "#808080".to_string());
                let _ = writeln!(
                    out,
                    "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{cw:.2}\" height=\"{chh:.2}\" fill=\"{fill}\"/>",
                    LEFT + i as f64 * cw,
                    TOP + ph - (j as f64 + 1.0) * chh
                );
            }
            let xa = index_axis(&gx, *log_x);
            let ya = index_axis(&gy, *log_y);
            frame(&mut out, &xa, &ya, x, y);
            // Colour bar.
            let bx = WIDTH - RIGHT + 20.0;
            for k in 0..32 {
                let t = k as f64 / 31.0;
                let _ = writeln!(
                    out,
                    "<rect x=\"{bx:.2}\" y=\"{:.2}\" width=\"16\" height=\"{:.2}\" fill=\"{}\"/>",
                    TOP + (1.0 - t) * ph - ph / 32.0,
                    ph / 32.0,
                    colour_map(t)
                );
            }
            for (t, label) in va.ticks() {
                let _ = writeln!(
                    out,
                    "<text x=\"{:.2}\" y=\"{:.2}\">{label}</text>",
                    bx + 20.0,
                    TOP + (1.0 - t) * ph
                );
            }
            let _ = writeln!(out, "<text x=\"{bx:.2}\" y=\"{:.2}\">{}</text>", TOP - 8.0, escape(value));
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Tick axis spanning the first to last grid value.
fn index_axis(grid: &[f64], log: bool) -> Axis {
    let (a, b) = (grid[0], grid[grid.len() - 1]);
    let conv = |v: f64| if log && v > 0.0 { v.log10() } else { v };
    let (lo, hi) = (conv(a), conv(b));
    if hi > lo {
        Axis { lo, hi, log: log && a > 0.0 }
    } else {
        Axis { lo: lo - 0.5, hi: hi + 0.5, log: log && a > 0.0 }
    }
}

/// Blue → white → red.
fn colour_map(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let u = 2.0 * t;
        (u, u, 1.0)
    } else {
        let u = 2.0 * (1.0 - t);
        (1.0, u, u)
    };
    let c = |v: f64| (v * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", c(r), c(g), c(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_table() -> CsvTable {
        let mut t = CsvTable::new(&["x", "a", "b"]);
        t.push(vec![1.0.into(), 2.0.into(), 3.0.into()]);
        t.push(vec![10.0.into(), 4.0.into(), 0.5.into()]);
        t
    }

    #[test]
    fn one_polyline_per_value_column() {
        let kind = PlotKind::Line { x: "x".into(), y: vec!["a".into(), "b".into()], group: None, log_x: true, log_y: false };
        let svg = render_svg(&line_table(), &kind).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg, render_svg(&line_table(), &kind).unwrap());
    }

    #[test]
    fn grouped_lines() {
        let mut t = CsvTable::new(&["g", "x", "a"]);
        for g in [1i64, 2, 3] {
            for x in 0..4 {
                t.push(vec![g.into(), (x as f64).into(), ((g * x) as f64).into()]);
            }
        }
        let kind = PlotKind::Line { x: "x".into(), y: vec!["a".into()], group: Some("g".into()), log_x: false, log_y: false };
        assert_eq!(render_svg(&t, &kind).unwrap().matches("<polyline").count(), 3);
    }

    #[test]
    fn heatmap_cells() {
        let mut t = CsvTable::new(&["x", "y", "v"]);
        for i in 0..3 {
            for j in 0..4 {
                t.push(vec![(i as f64).into(), (10f64.powi(j)).into(), ((i * j) as f64).into()]);
            }
        }
        let kind = PlotKind::Heatmap { x: "x".into(), y: "y".into(), value: "v".into(), log_x: false, log_y: true };
        let svg = render_svg(&t, &kind).unwrap();
        // 12 grid cells, 32 colour-bar steps and the background and frame.
        assert_eq!(svg.matches("<rect").count(), 12 + 32 + 2);
    }

    #[test]
    fn empty_table_is_rejected() {
        let t = CsvTable::new(&["x", "a"]);
        let kind = PlotKind::Line { x: "x".into(), y: vec!["a".into()], group: None, log_x: false, log_y: false };
        let e = render_svg(&t, &kind).unwrap_err();
        assert!(e.is_input());
    }
}
