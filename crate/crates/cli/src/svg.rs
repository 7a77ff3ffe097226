//! Hand-rendered line plot of a sweep.

use std::fmt::Write;

use teleport_sr::analysis::{SweepResult, CLASSICAL_LIMIT};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }

    fn polyline(&self, pts: impl Iterator<Item = (f64, f64)>) -> String {
        let mut s = String::new();
        for (i, (x, y)) in pts.enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{:.2},{:.2}", self.px(x), self.py(y));
        }
        s
    }
}

fn ticks(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Renders the sweep with `config_hash` embedded as a comment.
pub fn render(result: &SweepResult, config_hash: &str) -> String {
    let rows = &result.rows;
    let x1 = rows.iter().map(|r| r.scale).fold(0.0, f64::max).max(1e-9);
    let top = rows.iter().flat_map(|r| [r.mc_max, r.analytic_f]).fold(CLASSICAL_LIMIT, f64::max);
    let frame = Frame {
        x0: 0.0,
        x1,
        y0: 0.45,
        y1: ((top + 0.02) * 20.0).ceil() / 20.0,
    };
    let meta = &result.metadata;
    let symbol = match meta.noise_family.family_name() {
        "gaussian" => "σ",
        "alpha_stable" => "γ",
        "uniform" => "half-width",
        "laplace" => "b",
        _ => "scale",
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, "<!-- config-sha256: {config_hash} -->");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let title = format!(
        "Teleportation fidelity, {} noise, {} runs x {} trials",
        meta.noise_family.family_name(),
        meta.runs,
        meta.trials_per_run
    );
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(&title));

    let (bx, by) = (frame.px(frame.x0), frame.py(frame.y0));
    let (ex, ey) = (frame.px(frame.x1), frame.py(frame.y1));
    let _ = writeln!(s, r#"<g id="axes" stroke="black" fill="none">"#);
    let _ = writeln!(s, r#"<line x1="{bx:.2}" y1="{by:.2}" x2="{ex:.2}" y2="{by:.2}"/>"#);
    let _ = writeln!(s, r#"<line x1="{bx:.2}" y1="{by:.2}" x2="{bx:.2}" y2="{ey:.2}"/>"#);
    let _ = writeln!(s, "</g>");

    let xstep = if x1 > 4.0 { 1.0 } else if x1 > 1.0 { 0.5 } else { 0.1 };
    let _ = writeln!(s, r#"<g id="ticks" text-anchor="middle">"#);
    for t in ticks(frame.x0, frame.x1, xstep) {
        let x = frame.px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{by:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, by + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}">{t:.1}</text>"#, by + 18.0);
    }
    for t in ticks(frame.y0, frame.y1, 0.05) {
        let y = frame.py(t);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{bx:.2}" y2="{y:.2}" stroke="black"/>"#, bx - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.2}</text>"#, bx - 8.0, y + 4.0);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">noise {symbol}</text>"#, (bx + ex) / 2.0, HEIGHT - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">fidelity</text>"#,
        (by + ey) / 2.0,
        (by + ey) / 2.0
    );

    let hline = |s: &mut String, id: &str, y: f64, colour: &str, label: &str| {
        let py = frame.py(y);
        let _ = writeln!(
            s,
            r#"<g id="{id}"><line x1="{bx:.2}" y1="{py:.2}" x2="{ex:.2}" y2="{py:.2}" stroke="{colour}" stroke-dasharray="8 4"/><text x="{:.2}" y="{:.2}" text-anchor="end" fill="{colour}">{label}</text></g>"#,
            ex - 4.0,
            py - 5.0
        );
    };
    hline(&mut s, "classical-limit", CLASSICAL_LIMIT, "firebrick", "classical limit");
    hline(&mut s, "half", 0.5, "dimgray", "F = 1/2");

    let dotted = r#"fill="none" stroke="steelblue" stroke-width="1" stroke-dasharray="2 3""#;
    let _ = writeln!(
        s,
        r#"<polyline id="mc-min" {dotted} points="{}"/>"#,
        frame.polyline(rows.iter().map(|r| (r.scale, r.mc_min)))
    );
    let _ = writeln!(
        s,
        r#"<polyline id="mc-max" {dotted} points="{}"/>"#,
        frame.polyline(rows.iter().map(|r| (r.scale, r.mc_max)))
    );
    let _ = writeln!(
        s,
        r#"<polyline id="analytic" fill="none" stroke="darkorange" stroke-width="1" points="{}"/>"#,
        frame.polyline(rows.iter().map(|r| (r.scale, r.analytic_f)))
    );
    let _ = writeln!(
        s,
        r#"<polyline id="mc-smoothed" fill="none" stroke="navy" stroke-width="3" points="{}"/>"#,
        frame.polyline(rows.iter().map(|r| (r.scale, r.mc_smoothed)))
    );

    let legend = [
        ("navy", "", "smoothed Monte Carlo mean"),
        ("steelblue", r#" stroke-dasharray="2 3""#, "min / max over runs"),
        ("darkorange", "", "analytic"),
    ];
    let _ = writeln!(s, r#"<g id="legend">"#);
    for (i, (colour, dash, label)) in legend.iter().enumerate() {
        let y = TOP + 14.0 + 16.0 * i as f64;
        let x = bx + 14.0;
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{colour}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}">{label}</text>"#,
            x + 24.0,
            x + 30.0,
            y + 4.0
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
