use std::fmt::Write as _;
use std::path::Path;

use anyhow::Result;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use hyperspectra::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Tail,
    Curves,
}

#[derive(Debug, Deserialize)]
struct TailRow {
    threshold: f64,
    survival: f64,
    fit: f64,
}

#[derive(Debug, Deserialize)]
struct CurveRow {
    curve_id: usize,
    t: f64,
    lambda_re: f64,
    #[allow(dead_code)]
    lambda_im: f64,
    #[allow(dead_code)]
    residual: f64,
    singular_flag: u8,
}

fn read_rows<R: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<R>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let rows: std::result::Result<Vec<R>, _> = r.deserialize().collect();
    let rows = rows.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if rows.is_empty() {
        anyhow::bail!(Error::Parse(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it
                .filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi - lo < 1e-12 {
                let pad = lo.abs().max(1.0) * 0.5;
                (lo - pad, hi + pad)
            } else {
                let pad = (hi - lo) * 0.05;
                (lo - pad, hi + pad)
            }
        };
        Self {
            x: span(&mut xs.clone()),
            y: span(&mut ys.clone()),
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (H - TOP - BOTTOM)
    }

    fn axes(&self, svg: &mut String, title: &str, xlabel: &str, ylabel: &str) {
        let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
        let _ = writeln!(
            svg,
            r##"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="#000"/>"##,
            x1 - x0,
            y1 - y0
        );
        for i in 0..=5 {
            let f = i as f64 / 5.0;
            let xv = self.x.0 + f * (self.x.1 - self.x.0);
            let yv = self.y.0 + f * (self.y.1 - self.y.0);
            let (px, py) = (self.px(xv), self.py(yv));
            let _ = writeln!(
                svg,
                r##"<line x1="{px:.2}" y1="{y1}" x2="{px:.2}" y2="{:.2}" stroke="#000"/>"##,
                y1 + 5.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{px:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
                y1 + 18.0,
                tick(xv)
            );
            let _ = writeln!(
                svg,
                r##"<line x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="#000"/>"##,
                x0 - 5.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
                x0 - 8.0,
                py + 4.0,
                tick(yv)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="20" font-size="14" text-anchor="middle">{}</text>"#,
            W / 2.0,
            escape(title)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            H - 10.0,
            escape(xlabel)
        );
        let _ = writeln!(
            svg,
            r#"<text x="16" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(ylabel)
        );
    }

    fn polyline(&self, svg: &mut String, pts: &[(f64, f64)], color: &str, dashed: bool) {
        let coords: Vec<String> = pts
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y)))
            .collect();
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            coords.join(" ")
        );
    }
}

fn tick(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-2 && v.abs() < 1e4) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
    )
}

/// log10 survival against the threshold with the fitted `C exp(-c t²)` dashed on top.
pub fn tail_svg(path: &Path) -> Result<String> {
    let rows: Vec<TailRow> = read_rows(path)?;
    let obs: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.survival > 0.0)
        .map(|r| (r.threshold, r.survival.log10()))
        .collect();
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.fit > 0.0)
        .map(|r| (r.threshold, r.fit.log10()))
        .collect();
    let frame = Frame::new(rows.iter().map(|r| r.threshold), obs.iter().chain(&fit).map(|p| p.1));
    let mut svg = open();
    frame.axes(&mut svg, "empirical survival", "t", "log10 S(t)");
    frame.polyline(&mut svg, &obs, PALETTE[0], false);
    for &(x, y) in &obs {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}"/>"#,
            frame.px(x),
            frame.py(y),
            PALETTE[0]
        );
    }
    frame.polyline(&mut svg, &fit, PALETTE[1], true);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" fill="{}">C exp(-c t²) fit</text>"#,
        W - RIGHT - 110.0,
        TOP + 16.0,
        PALETTE[1]
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Re λ against t per curve, with vertical rules at flagged singular points.
pub fn curves_svg(path: &Path) -> Result<String> {
    let rows: Vec<CurveRow> = read_rows(path)?;
    let frame = Frame::new(rows.iter().map(|r| r.t), rows.iter().map(|r| r.lambda_re));
    let mut svg = open();
    frame.axes(&mut svg, "eigenvalue curves", "t", "Re λ");
    let mut singular: Vec<f64> = rows.iter().filter(|r| r.singular_flag != 0).map(|r| r.t).collect();
    singular.sort_by(f64::total_cmp);
    singular.dedup();
    for t in singular {
        let x = frame.px(t);
        let _ = writeln!(
            svg,
            r##"<line class="singular" x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{}" stroke="#888" stroke-dasharray="3 3"/>"##,
            H - BOTTOM
        );
    }
    let mut ids: Vec<usize> = rows.iter().map(|r| r.curve_id).collect();
    ids.sort_unstable();
    ids.dedup();
    for id in ids {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.curve_id == id)
            .map(|r| (r.t, r.lambda_re))
            .collect();
        frame.polyline(&mut svg, &pts, PALETTE[id % PALETTE.len()], false);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn render(input: &Path, kind: PlotKind) -> Result<String> {
    match kind {
        PlotKind::Tail => tail_svg(input),
        PlotKind::Curves => curves_svg(input),
    }
}
