//! Minimal SVG line plots.

use zetaflow::output::fmt_g_prec;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 50.0;

fn num(x: f64) -> String {
    fmt_g_prec(x, 6)
}

/// One polyline per series, with a frame and min/max labels on both axes.
pub fn polylines(series: &[Vec<(f64, f64)>], x_label: &str, y_label: &str) -> String {
    let points = series.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = WIDTH,
        h = HEIGHT
    );
    out.push_str(&format!(
        "<rect x=\"{m}\" y=\"{m}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN,
        m = MARGIN
    ));
    let text = |x: f64, y: f64, anchor: &str, s: &str| {
        format!("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"{anchor}\">{s}</text>\n", num(x), num(y))
    };
    out.push_str(&text(MARGIN, HEIGHT - MARGIN + 16.0, "start", &num(x0)));
    out.push_str(&text(WIDTH - MARGIN, HEIGHT - MARGIN + 16.0, "end", &num(x1)));
    out.push_str(&text(WIDTH / 2.0, HEIGHT - 12.0, "middle", x_label));
    out.push_str(&text(MARGIN - 4.0, HEIGHT - MARGIN, "end", &num(y0)));
    out.push_str(&text(MARGIN - 4.0, MARGIN + 4.0, "end", &num(y1)));
    out.push_str(&text(14.0, HEIGHT / 2.0, "middle", y_label));
    for line in series {
        let pts: Vec<String> = line.iter().map(|&(x, y)| format!("{},{}", num(sx(x)), num(sy(y)))).collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}
