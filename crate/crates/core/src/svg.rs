//! Two-panel SVG: error curve, then domain with support points and poles.

use std::fmt::Write;

use num_complex::Complex;

use crate::driver::ApproxReport;

type C64 = Complex<f64>;

const PANEL: f64 = 400.0;
const PAD: f64 = 30.0;

/// Maps a square window of the plane onto a panel, equal scale on both axes.
struct Frame {
    left: f64,
    center: C64,
    half: f64,
}

impl Frame {
    fn fit(left: f64, pts: impl Iterator<Item = C64>, margin: f64) -> Frame {
        let (mut lo, mut hi) = (C64::new(f64::INFINITY, f64::INFINITY), C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in pts.filter(|p| p.re.is_finite() && p.im.is_finite()) {
            lo = C64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = C64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        if !lo.re.is_finite() {
            lo = C64::new(-1.0, -1.0);
            hi = C64::new(1.0, 1.0);
        }
        let half = ((hi.re - lo.re).max(hi.im - lo.im) / 2.0 * margin).max(f64::MIN_POSITIVE);
        Frame {
            left,
            center: (lo + hi) / 2.0,
            half,
        }
    }

    fn map(&self, z: C64) -> (f64, f64) {
        let s = (PANEL - 2.0 * PAD) / (2.0 * self.half);
        (
            self.left + PANEL / 2.0 + (z.re - self.center.re) * s,
            PANEL / 2.0 - (z.im - self.center.im) * s,
        )
    }

    fn contains(&self, z: C64) -> bool {
        (z.re - self.center.re).abs() <= self.half * 1.1 && (z.im - self.center.im).abs() <= self.half * 1.1
    }
}

fn dot(out: &mut String, (x, y): (f64, f64), r: f64, style: &str, id: Option<&str>) {
    let id = id.map(|i| format!(" id=\"{i}\"")).unwrap_or_default();
    let _ = writeln!(out, r#"<circle{id} cx="{x:.3}" cy="{y:.3}" r="{r}" {style}/>"#);
}

pub fn render(report: &ApproxReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        2.0 * PANEL,
        PANEL + 20.0,
        2.0 * PANEL,
        PANEL + 20.0
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // error curve f − r in sample order
    let errs: Vec<C64> = report.errors.iter().flatten().copied().collect();
    let f1 = Frame::fit(0.0, errs.iter().copied().chain([C64::new(0.0, 0.0)]), 1.1);
    let mut pts = String::new();
    for e in &errs {
        let (x, y) = f1.map(*e);
        let _ = write!(pts, "{x:.3},{y:.3} ");
    }
    if report.samples.closed_curve() {
        if let Some(e) = errs.first() {
            let (x, y) = f1.map(*e);
            let _ = write!(pts, "{x:.3},{y:.3}");
        }
    }
    let _ = writeln!(s, r#"<polyline id="error-curve" fill="none" stroke="steelblue" stroke-width="1" points="{}"/>"#, pts.trim_end());
    dot(&mut s, f1.map(C64::new(0.0, 0.0)), 3.0, r#"fill="black""#, Some("origin"));
    if let Some(Some(e)) = report.errors.get(report.argmax) {
        dot(&mut s, f1.map(*e), 4.0, r#"fill="none" stroke="red" stroke-width="1.5""#, Some("max-error"));
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="12">error curve, max {:.3e}</text>"#,
        PAD,
        PANEL + 12.0,
        report.lawson_max_error
    );

    // domain, support points, poles
    let z = report.samples.points();
    let f2 = Frame::fit(PANEL, z.iter().copied(), 1.5);
    let _ = writeln!(s, r#"<g id="domain">"#);
    for &p in z {
        dot(&mut s, f2.map(p), 0.8, r#"fill="gray""#, None);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="support">"#);
    for &p in report.rational.support_points() {
        dot(&mut s, f2.map(p), 2.5, r#"fill="none" stroke="black""#, None);
    }
    let _ = writeln!(s, "</g>");
    let shown: Vec<C64> = report.poles.iter().copied().filter(|&p| f2.contains(p)).collect();
    let _ = writeln!(s, r#"<g id="poles">"#);
    for &p in &shown {
        dot(&mut s, f2.map(p), 2.5, r#"fill="red""#, None);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{} n={} poles shown {}/{}</text>"#,
        PANEL + PAD,
        PANEL + 12.0,
        xml_escape(&report.name),
        report.degree,
        shown.len(),
        report.poles.len()
    );
    s.push_str("</svg>\n");
    s
}

fn xml_escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
