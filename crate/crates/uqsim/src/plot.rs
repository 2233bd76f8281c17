//! Self-contained 800x600 SVG plots.

use std::fmt::Write;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn open(title: &str, xlabel: &str, ylabel: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-size="18">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + (WIDTH - LEFT - RIGHT) / 2.0,
        HEIGHT - 20.0,
        escape(xlabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{y}" text-anchor="middle" font-size="14" transform="rotate(-90 20 {y})">{}</text>"#,
        escape(ylabel),
        y = TOP + (HEIGHT - TOP - BOTTOM) / 2.0
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );
    s
}

fn range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn y_ticks(s: &mut String, lo: f64, hi: f64, map: impl Fn(f64) -> f64) {
    for i in 0..=4 {
        let v = lo + (hi - lo) * i as f64 / 4.0;
        let y = map(v);
        let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end" font-size="12">{v:.3}</text>"#, LEFT - 8.0, y + 4.0);
    }
}

const COLORS: [&str; 6] = ["steelblue", "darkorange", "seagreen", "crimson", "purple", "saddlebrown"];

/// Polyline of `points` with markers.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, points: &[(f64, f64)]) -> String {
    multi_line_plot(title, xlabel, ylabel, &[(String::new(), points.to_vec())])
}

/// Several named series on shared axes, with a legend when names are given.
pub fn multi_line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut s = open(title, xlabel, ylabel);
    let all = || series.iter().flat_map(|(_, p)| p.iter());
    let (x0, x1) = range(all().map(|p| p.0));
    let (y0, y1) = range(all().map(|p| p.1).chain([0.0, 1.0]));
    let w = WIDTH - LEFT - RIGHT;
    let h = HEIGHT - TOP - BOTTOM;
    let mx = |x: f64| LEFT + (x - x0) / (x1 - x0) * w;
    let my = |y: f64| TOP + h - (y - y0) / (y1 - y0) * h;
    y_ticks(&mut s, y0, y1, my);
    for i in 0..=4 {
        let v = x0 + (x1 - x0) * i as f64 / 4.0;
        let x = mx(v);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, TOP + h, TOP + h + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle" font-size="12">{v:.4}</text>"#, TOP + h + 20.0);
    }
    for (k, (name, points)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", mx(x), my(y))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, pts.join(" "));
        if points.len() <= 200 {
            for &(x, y) in points {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, mx(x), my(y));
            }
        }
        if !name.is_empty() {
            let y = TOP + 20.0 + 18.0 * k as f64;
            let x = WIDTH - RIGHT - 150.0;
            let _ = writeln!(s, r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#, x + 20.0);
            let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">{}</text>"#, x + 26.0, y + 4.0, escape(name));
        }
    }
    s.push_str("</svg>\n");
    s
}

/// One bar per `(label, value)`.
pub fn bar_chart(title: &str, xlabel: &str, ylabel: &str, bars: &[(String, f64)]) -> String {
    let mut s = open(title, xlabel, ylabel);
    let (_, y1) = range(bars.iter().map(|b| b.1).chain([0.0, 1.0]));
    let w = WIDTH - LEFT - RIGHT;
    let h = HEIGHT - TOP - BOTTOM;
    let my = |y: f64| TOP + h - y / y1 * h;
    y_ticks(&mut s, 0.0, y1, my);
    let slot = w / bars.len().max(1) as f64;
    let label_every = (bars.len() / 20).max(1);
    for (i, (label, v)) in bars.iter().enumerate() {
        let x = LEFT + slot * i as f64 + slot * 0.1;
        let y = my(v.max(0.0));
        let _ = writeln!(
            s,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="steelblue"/>"#,
            slot * 0.8,
            TOP + h - y
        );
        if i % label_every == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{}" text-anchor="middle" font-size="11">{}</text>"#,
                x + slot * 0.4,
                TOP + h + 18.0,
                escape(label)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plots_are_well_formed() {
        let line = line_plot("a < b & c", "step", "F", &[(1.0, 0.5), (2.0, 0.9)]);
        let doc = roxmltree::Document::parse(&line).unwrap();
        assert_eq!(doc.root_element().attribute("width"), Some("800"));
        let bars = bar_chart("h", "E", "w", &[("-1.5".into(), 0.7), ("2".into(), 0.3)]);
        let doc = roxmltree::Document::parse(&bars).unwrap();
        assert_eq!(doc.root_element().attribute("height"), Some("600"));
        roxmltree::Document::parse(&line_plot("empty", "x", "y", &[])).unwrap();
        roxmltree::Document::parse(&bar_chart("one", "x", "y", &[("0".into(), 0.0)])).unwrap();
        let multi = multi_line_plot("m", "eta", "F", &[("50 steps".into(), vec![(0.0, 0.5)]), ("a&b".into(), vec![(0.0, 0.7), (1.0, 0.2)])]);
        let doc = roxmltree::Document::parse(&multi).unwrap();
        assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 2);
    }
}
