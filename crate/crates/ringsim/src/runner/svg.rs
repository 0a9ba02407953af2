//! Minimal native SVG rendering: line plots and heatmaps, no external
//! plotting dependency. Plots are artifacts, not a UI.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Result, RingsimError};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn finite_bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        None
    } else if lo == hi {
        Some((lo - 0.5, hi + 0.5))
    } else {
        Some((lo, hi))
    }
}

fn ticks(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{x}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"15\">{title}</text>\n",
        x = WIDTH / 2.0,
    )
}

fn axes(xlabel: &str, ylabel: &str, xlo: f64, xhi: f64, ylo: f64, yhi: f64) -> String {
    let mut s = String::new();
    let (x0, x1) = (MARGIN_L, WIDTH - MARGIN_R);
    let (y0, y1) = (HEIGHT - MARGIN_B, MARGIN_T);
    writeln!(
        s,
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"black\"/>",
        w = x1 - x0,
        h = y0 - y1
    )
    .unwrap();
    for t in ticks(xlo, xhi, 5) {
        let px = x0 + (t - xlo) / (xhi - xlo) * (x1 - x0);
        writeln!(
            s,
            "<line x1=\"{px}\" y1=\"{y0}\" x2=\"{px}\" y2=\"{}\" stroke=\"black\"/>\
             <text x=\"{px}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">{t:.3}</text>",
            y0 + 5.0,
            y0 + 20.0
        )
        .unwrap();
    }
    for t in ticks(ylo, yhi, 5) {
        let py = y0 - (t - ylo) / (yhi - ylo) * (y0 - y1);
        writeln!(
            s,
            "<line x1=\"{}\" y1=\"{py}\" x2=\"{x0}\" y2=\"{py}\" stroke=\"black\"/>\
             <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\">{t:.3}</text>",
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\">{xlabel}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\" transform=\"rotate(-90 16 {y})\">{ylabel}</text>",
        (y0 + y1) / 2.0,
        y = (y0 + y1) / 2.0
    )
    .unwrap();
    s
}

/// Render named series as polylines with a legend.
pub fn line_plot(
    path: &Path,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> Result<()> {
    let (xlo, xhi) = finite_bounds(series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.0)))
        .ok_or_else(|| RingsimError::InvalidArgument("no finite points to plot".into()))?;
    let (ylo, yhi) = finite_bounds(series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)))
        .ok_or_else(|| RingsimError::InvalidArgument("no finite points to plot".into()))?;
    let mut svg = header(title);
    svg += &axes(xlabel, ylabel, xlo, xhi, ylo, yhi);
    let (x0, x1) = (MARGIN_L, WIDTH - MARGIN_R);
    let (y0, y1) = (HEIGHT - MARGIN_B, MARGIN_T);
    for (idx, (name, pts)) in series.iter().enumerate() {
        let color = SERIES_COLORS[idx % SERIES_COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| {
                let px = x0 + (x - xlo) / (xhi - xlo) * (x1 - x0);
                let py = y0 - (y - ylo) / (yhi - ylo) * (y0 - y1);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            coords.join(" ")
        )
        .expect("infallible string write");
        writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             fill=\"{color}\">{name}</text>",
            x1 - 150.0,
            y1 + 16.0 * (idx as f64 + 1.0)
        )
        .expect("infallible string write");
    }
    svg += "</svg>\n";
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, svg)?;
    Ok(())
}

/// Linear blue→yellow color ramp.
fn ramp(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (253.0 * t + 68.0 * (1.0 - t)) as u8;
    let g = (231.0 * t + 1.0 * (1.0 - t)) as u8;
    let b = (37.0 * t + 84.0 * (1.0 - t)) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

/// Render a matrix of values as a colored grid; `values[row][col]`
/// maps row → y (bottom-up) and col → x.
pub fn heatmap(
    path: &Path,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[Vec<f64>],
) -> Result<()> {
    if values.len() != ys.len() || values.iter().any(|r| r.len() != xs.len()) {
        return Err(RingsimError::DimensionMismatch(
            "heatmap values must be ys.len() rows of xs.len() columns".into(),
        ));
    }
    let (vlo, vhi) = finite_bounds(values.iter().flatten().cloned())
        .ok_or_else(|| RingsimError::InvalidArgument("no finite values to plot".into()))?;
    let (xlo, xhi) = finite_bounds(xs.iter().cloned()).unwrap();
    let (ylo, yhi) = finite_bounds(ys.iter().cloned()).unwrap();
    let mut svg = header(title);
    svg += &axes(xlabel, ylabel, xlo, xhi, ylo, yhi);
    let (x0, x1) = (MARGIN_L, WIDTH - MARGIN_R);
    let (y0, y1) = (HEIGHT - MARGIN_B, MARGIN_T);
    let cw = (x1 - x0) / xs.len() as f64;
    let ch = (y0 - y1) / ys.len() as f64;
    for (row, rvals) in values.iter().enumerate() {
        for (col, v) in rvals.iter().enumerate() {
            if !v.is_finite() {
                continue;
            }
            let t = if vhi > vlo { (v - vlo) / (vhi - vlo) } else { 0.5 };
            let px = x0 + col as f64 * cw;
            let py = y0 - (row as f64 + 1.0) * ch;
            writeln!(
                svg,
                "<rect x=\"{px:.2}\" y=\"{py:.2}\" width=\"{cw:.2}\" height=\"{ch:.2}\" \
                 fill=\"{}\"/>",
                ramp(t)
            )
            .expect("infallible string write");
        }
    }
    svg += "</svg>\n";
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_writes_valid_svg() {
        let dir = std::env::temp_dir().join("ringsim_svg_test");
        let path = dir.join("line.svg");
        let series = vec![(
            "eta".to_string(),
            (0..20).map(|i| (i as f64, (i as f64 * 0.3).sin())).collect(),
        )];
        line_plot(&path, "test", "x", "y", &series).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.contains("<polyline"));
        assert!(text.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn heatmap_validates_shape() {
        let dir = std::env::temp_dir().join("ringsim_svg_test");
        let path = dir.join("map.svg");
        let vals = vec![vec![0.0, 1.0], vec![2.0, 3.0]];
        heatmap(&path, "t", "x", "y", &[0.0, 1.0], &[0.0, 1.0], &vals).unwrap();
        assert!(std::fs::read_to_string(&path).unwrap().contains("<rect"));
        assert!(heatmap(&path, "t", "x", "y", &[0.0], &[0.0, 1.0], &vals).is_err());
    }
}
