//! Minimal SVG plots: polylines, markers and axis ticks.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Circle,
    Triangle,
    Cross,
}

#[derive(Debug, Clone)]
pub enum Series {
    /// Broken at NaN points.
    Line { points: Vec<(f64, f64)>, color: &'static str, dashed: bool },
    Points { points: Vec<(f64, f64)>, color: &'static str, marker: Marker },
}

#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Fixed y range; otherwise fitted to the data.
    pub y_range: Option<(f64, f64)>,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// Round tick positions covering `[lo, hi]`, about five of them.
pub fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|s| s * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn extent(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        return None;
    }
    if hi - lo < 1e-12 {
        let pad = lo.abs().max(1.0) * 0.05;
        return Some((lo - pad, hi + pad));
    }
    let pad = 0.03 * (hi - lo);
    Some((lo - pad, hi + pad))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn label(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

impl Plot {
    fn all_points(&self) -> impl Iterator<Item = &(f64, f64)> {
        self.series.iter().flat_map(|s| match s {
            Series::Line { points, .. } | Series::Points { points, .. } => points.iter(),
        })
    }

    pub fn render(&self) -> String {
        let (x0, x1) = extent(self.all_points().map(|p| p.0)).unwrap_or((0.0, 1.0));
        let (y0, y1) = self.y_range.or_else(|| extent(self.all_points().map(|p| p.1))).unwrap_or((0.0, 1.0));
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
        let sy = |y: f64| H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM);
        let inside = |x: f64, y: f64| x.is_finite() && y.is_finite() && y >= y0 && y <= y1;

        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(&self.title));
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            W - LEFT - RIGHT,
            H - TOP - BOTTOM
        );
        for t in ticks(x0, x1) {
            let x = sx(t);
            let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, H - BOTTOM, H - BOTTOM + 5.0);
            let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, H - BOTTOM + 18.0, label(t));
        }
        for t in ticks(y0, y1) {
            let y = sy(t);
            let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0);
            let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, y + 4.0, label(t));
        }
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (LEFT + W - RIGHT) / 2.0, H - 12.0, escape(&self.x_label));
        let _ = writeln!(
            s,
            r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            (TOP + H - BOTTOM) / 2.0,
            escape(&self.y_label)
        );

        for series in &self.series {
            match series {
                Series::Line { points, color, dashed } => {
                    let dash = if *dashed { r#" stroke-dasharray="4 3""# } else { "" };
                    let mut run: Vec<String> = Vec::new();
                    let flush = |run: &mut Vec<String>, s: &mut String| {
                        if run.len() > 1 {
                            let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}"{dash} points="{}"/>"#, run.join(" "));
                        }
                        run.clear();
                    };
                    for &(x, y) in points {
                        if inside(x, y) {
                            run.push(format!("{:.2},{:.2}", sx(x), sy(y)));
                        } else {
                            flush(&mut run, &mut s);
                        }
                    }
                    flush(&mut run, &mut s);
                }
                Series::Points { points, color, marker } => {
                    for &(x, y) in points.iter().filter(|p| inside(p.0, p.1)) {
                        let (px, py) = (sx(x), sy(y));
                        let _ = match marker {
                            Marker::Circle => {
                                writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="4" fill="none" stroke="{color}"/>"#)
                            }
                            Marker::Triangle => writeln!(
                                s,
                                r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="{color}"/>"#,
                                px,
                                py - 5.0,
                                px - 4.5,
                                py + 3.5,
                                px + 4.5,
                                py + 3.5
                            ),
                            Marker::Cross => writeln!(
                                s,
                                r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="{color}"/>"#,
                                px - 4.0,
                                py - 4.0,
                                px + 4.0,
                                py + 4.0,
                                px - 4.0,
                                py + 4.0,
                                px + 4.0,
                                py - 4.0
                            ),
                        };
                    }
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tick_steps_are_round() {
        let t = ticks(0.0, 1.0);
        assert_eq!(t.len(), 6);
        assert!((t[3] - 0.6).abs() < 1e-12);
        assert_eq!(ticks(-1.3, 6.2), vec![0.0, 2.0, 4.0, 6.0]);
    }

    #[test]
    fn nan_breaks_polyline() {
        let p = Plot {
            series: vec![Series::Line {
                points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, f64::NAN), (3.0, 1.0), (4.0, 0.0)],
                color: "black",
                dashed: false,
            }],
            ..Plot::default()
        };
        let svg = p.render();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn labels_are_escaped() {
        let p = Plot { title: "E < 6 & g".into(), ..Plot::default() };
        assert!(p.render().contains("E &lt; 6 &amp; g"));
    }
}
