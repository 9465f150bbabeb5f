//! Self-contained SVG plots of experiment and trace tables.
//!
//! Output depends only on the input rows, so identical tables give
//! byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::experiment::{summarize, ExperimentRow};
use crate::fit::{fit_points, FitModel};
use crate::trace::TraceRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    Scaling,
    BetaTrace,
    CoverageTrace,
}

impl std::str::FromStr for PlotKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scaling" => Ok(PlotKind::Scaling),
            "beta_trace" => Ok(PlotKind::BetaTrace),
            "coverage_trace" => Ok(PlotKind::CoverageTrace),
            other => Err(HarnessError::Config(format!(
                "unknown plot kind `{other}` (expected scaling, beta_trace or coverage_trace)"
            ))),
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

#[derive(Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64> + Clone, log: bool) -> Self {
        let map = |v: f64| if log { v.log10() } else { v };
        let lo = values.clone().map(map).fold(f64::INFINITY, f64::min);
        let hi = values.map(map).fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if log {
            (lo.floor(), hi.ceil().max(lo.floor() + 1.0))
        } else if hi > lo {
            (lo.min(0.0), hi)
        } else {
            (lo.min(0.0), lo.min(0.0) + hi.abs().max(1.0))
        };
        Axis { lo, hi, log }
    }

    fn fraction(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            (self.lo as i32..=self.hi as i32)
                .map(|e| 10f64.powi(e))
                .collect()
        } else {
            (0..=5)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / 5.0)
                .collect()
        }
    }
}

struct Frame {
    x: Axis,
    y: Axis,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + self.x.fraction(x) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - self.y.fraction(y) * (HEIGHT - TOP - BOTTOM)
    }
}

fn label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-2) {
        format!("{v:.0e}")
    } else if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn header(svg: &mut String, frame: &Frame, title: &str, x_label: &str, y_label: &str) {
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    );
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        "<path class=\"axes\" d=\"M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}\" fill=\"none\" stroke=\"black\"/>"
    );
    for t in frame.x.ticks() {
        let x = frame.px(t);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.1}\" y1=\"{y0:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/><text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
            y0 + 5.0,
            y0 + 18.0,
            label(t)
        );
    }
    for t in frame.y.ticks() {
        let y = frame.py(t);
        let _ = writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{x0:.1}\" y2=\"{y:.1}\" stroke=\"black\"/><text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>",
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0,
            label(t)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        "<text transform=\"translate(16,{:.1}) rotate(-90)\" text-anchor=\"middle\">{}</text>",
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn polyline(
    svg: &mut String,
    frame: &Frame,
    class: &str,
    color: &str,
    dashed: bool,
    points: &[(f64, f64)],
) {
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.1},{:.1}", frame.px(x), frame.py(y)))
        .collect();
    let dash = if dashed {
        " stroke-dasharray=\"6,4\""
    } else {
        ""
    };
    let _ = writeln!(
        svg,
        "<polyline class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>",
        coords.join(" ")
    );
}

/// Mean uncapped generations against `n` on log-log axes, one series per
/// `(algo, m)`, each with its least-squares power-law line when it has at
/// least three support points.
pub fn scaling_svg(rows: &[ExperimentRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    let mut series: BTreeMap<(String, usize), Vec<(f64, f64)>> = BTreeMap::new();
    for group in summarize(rows) {
        if let Some(mean) = group.mean {
            series
                .entry((group.algo.name().to_string(), group.m))
                .or_default()
                .push((group.n as f64, mean));
        }
    }
    let all: Vec<(f64, f64)> = series.values().flatten().copied().collect();
    if all.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    let frame = Frame {
        x: Axis::new(all.iter().map(|p| p.0), true),
        y: Axis::new(all.iter().map(|p| p.1), true),
    };
    let mut svg = String::new();
    header(
        &mut svg,
        &frame,
        "Generations to full coverage",
        "n",
        "mean generations",
    );
    for (i, ((algo, m), points)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(
            svg,
            "<g class=\"series\" data-algo=\"{algo}\" data-m=\"{m}\">"
        );
        for &(x, y) in points {
            let _ = writeln!(
                svg,
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"{color}\"/>",
                frame.px(x),
                frame.py(y)
            );
        }
        let mut legend = format!("{algo} m={m}");
        if let Ok(fit) = fit_points(FitModel::NPow, points) {
            let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            polyline(
                &mut svg,
                &frame,
                "fit",
                color,
                true,
                &[(lo, fit.predict(lo)), (hi, fit.predict(hi))],
            );
            let _ = write!(legend, " slope {:.2}", fit.slope);
        }
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" fill=\"{color}\">{}</text>\n</g>",
            LEFT + 10.0,
            TOP + 14.0 * (i + 1) as f64,
            escape(&legend)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn trace_svg(
    rows: &[TraceRow],
    title: &str,
    y_label: &str,
    value: impl Fn(&TraceRow) -> f64,
) -> Result<String> {
    if rows.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.t as f64, value(r))).collect();
    let frame = Frame {
        x: Axis::new(points.iter().map(|p| p.0), false),
        y: Axis::new(points.iter().map(|p| p.1), false),
    };
    let mut svg = String::new();
    header(&mut svg, &frame, title, "generation", y_label);
    polyline(&mut svg, &frame, "trace", COLORS[0], false, &points);
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Maximum cover number against generation.
pub fn beta_trace_svg(rows: &[TraceRow]) -> Result<String> {
    trace_svg(rows, "Maximum cover number", "beta", |r| r.beta as f64)
}

/// Covered fraction of the Pareto front against generation.
pub fn coverage_trace_svg(rows: &[TraceRow]) -> Result<String> {
    trace_svg(rows, "Pareto front coverage", "covered fraction", |r| {
        r.coverage_fraction
    })
}
