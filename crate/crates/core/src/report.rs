//! CSV and SVG renderings of curves and histograms.
//!
//! Reals are written with 12 significant digits in plain decimal notation.
//! SVG output is self-contained: one `<polyline>` per curve, one `<rect>` per
//! histogram bar, and no other rect or polyline elements.

use crate::curves::CurveSeries;
use crate::error::{Error, Result};
use crate::spectra::Histogram;
use std::fmt::Write;

/// Shortest plain-decimal rendering of `x` rounded to 12 significant digits.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

pub fn curve_csv(c: &CurveSeries) -> String {
    let mut out = String::from("p,value\n");
    for (x, y) in c.xs.iter().zip(&c.ys) {
        let _ = writeln!(out, "{},{}", format_real(*x), format_real(*y));
    }
    out
}

pub fn histogram_csv(h: &Histogram) -> Result<String> {
    if h.bins() == 0 {
        return Err(Error::InvalidInput("histogram has no bins".into()));
    }
    let mut out = String::from("bin_lo,bin_hi,count\n");
    let edges = h.bin_edges();
    for (k, count) in h.counts().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{count}",
            format_real(edges[k]),
            format_real(edges[k + 1])
        );
    }
    Ok(out)
}

fn data_rows<'a>(
    text: &'a str,
    header: &str,
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == header => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "expected header {header:?}, found {:?}",
                other.unwrap_or("")
            )))
        }
    }
    Ok(lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 2, l.split(',').map(str::trim).collect())))
}

fn field<T: std::str::FromStr>(line: usize, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::InvalidInput(format!("line {line}: cannot parse {raw:?}")))
}

/// Reads `p,value` rows back into `(xs, ys)`.
pub fn parse_curve_csv(text: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (line, cols) in data_rows(text, "p,value")? {
        if cols.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "line {line}: expected 2 columns"
            )));
        }
        xs.push(field(line, cols[0])?);
        ys.push(field(line, cols[1])?);
    }
    Ok((xs, ys))
}

pub fn parse_histogram_csv(text: &str) -> Result<Histogram> {
    let mut edges = Vec::new();
    let mut counts = Vec::new();
    for (line, cols) in data_rows(text, "bin_lo,bin_hi,count")? {
        if cols.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "line {line}: expected 3 columns"
            )));
        }
        let lo: f64 = field(line, cols[0])?;
        let hi: f64 = field(line, cols[1])?;
        if let Some(&prev) = edges.last() {
            if prev != lo {
                return Err(Error::InvalidInput(format!(
                    "line {line}: bins are not contiguous"
                )));
            }
            edges.push(hi);
        } else {
            edges.extend([lo, hi]);
        }
        counts.push(field(line, cols[2])?);
    }
    Histogram::from_parts(edges, counts)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 16.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 44.0;

/// Linear map from data to pixel coordinates of the plot area.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
}

impl Frame {
    fn new(x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        let widen = |(lo, hi): (f64, f64)| {
            if hi > lo {
                (lo, hi)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        };
        Frame {
            x_range: widen(x_range),
            y_range: widen(y_range),
        }
    }

    pub fn px(&self, x: f64) -> f64 {
        let (lo, hi) = self.x_range;
        LEFT + (x - lo) / (hi - lo) * (WIDTH - LEFT - RIGHT)
    }

    pub fn py(&self, y: f64) -> f64 {
        let (lo, hi) = self.y_range;
        HEIGHT - BOTTOM - (y - lo) / (hi - lo) * (HEIGHT - TOP - BOTTOM)
    }

    /// Frame used for a curve: x over the sampled densities, y from
    /// `min(0, ymin)` to `ymax`.
    pub fn for_curve(c: &CurveSeries) -> Self {
        let (xlo, xhi) = min_max(&c.xs).unwrap_or((0.0, 1.0));
        let (ylo, yhi) = min_max(&c.ys).unwrap_or((0.0, 1.0));
        Frame::new((xlo, xhi), (ylo.min(0.0), yhi))
    }

    pub fn for_histogram(h: &Histogram) -> Self {
        let edges = h.bin_edges();
        let top = h.counts().iter().copied().max().unwrap_or(0).max(1) as f64;
        Frame::new((edges[0], edges[edges.len() - 1]), (0.0, top))
    }
}

fn min_max(v: &[f64]) -> Option<(f64, f64)> {
    let lo = v.iter().copied().reduce(f64::min)?;
    let hi = v.iter().copied().reduce(f64::max)?;
    Some((lo, hi))
}

/// Roughly five round tick values covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * magnitude);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    format_real((v * 1e9).round() / 1e9)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn open_svg(out: &mut String, title: &str, frame: &Frame, x_label: &str, y_label: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        out,
        r##"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" fill="none" stroke="#333"/>"##
    );
    for t in ticks(frame.x_range.0, frame.x_range.1) {
        let px = frame.px(t);
        let _ = writeln!(
            out,
            r##"<line x1="{px:.2}" y1="{y0:.1}" x2="{px:.2}" y2="{:.1}" stroke="#333"/><text x="{px:.2}" y="{:.1}" text-anchor="middle">{}</text>"##,
            y0 + 4.0,
            y0 + 16.0,
            tick_label(t)
        );
    }
    for t in ticks(frame.y_range.0, frame.y_range.1) {
        let py = frame.py(t);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{py:.2}" x2="{x0:.1}" y2="{py:.2}" stroke="#333"/><text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"##,
            x0 - 4.0,
            x0 - 6.0,
            py + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 8.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.1}" text-anchor="middle" transform="rotate(-90 14 {:.1})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

pub fn curve_svg(c: &CurveSeries, title: &str) -> String {
    let frame = Frame::for_curve(c);
    let mut out = String::new();
    open_svg(
        &mut out,
        title,
        &frame,
        "edge density p",
        c.statistic.label(),
    );
    let points: Vec<String> =
        c.xs.iter()
            .zip(&c.ys)
            .map(|(x, y)| format!("{:.3},{:.3}", frame.px(*x), frame.py(*y)))
            .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="1.5"/>"##,
        points.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

pub fn histogram_svg(h: &Histogram, title: &str) -> String {
    let frame = Frame::for_histogram(h);
    let mut out = String::new();
    open_svg(&mut out, title, &frame, "eigenvalue", "count");
    let edges = h.bin_edges();
    let base = frame.py(0.0);
    for (k, &count) in h.counts().iter().enumerate() {
        let x = frame.px(edges[k]);
        let w = frame.px(edges[k + 1]) - x;
        let top = frame.py(count as f64);
        let _ = writeln!(
            out,
            r##"<rect x="{x:.3}" y="{top:.3}" width="{w:.3}" height="{:.3}" fill="#1f5fa8"/>"##,
            base - top
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::Statistic;
    use crate::spectra::{spectrum_histogram, Kind, Spectrum};

    fn series(xs: Vec<f64>, ys: Vec<f64>) -> CurveSeries {
        CurveSeries::new(Statistic::Gap, Kind::Raw, xs, ys).unwrap()
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(-0.0), "0");
        assert_eq!(format_real(4.0), "4");
        assert_eq!(format_real(200.0), "200");
        assert_eq!(format_real(0.1), "0.1");
        assert_eq!(format_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_real(2.0f64.sqrt() * 1e6), "1414213.56237");
        assert_eq!(format_real(-1.5e-7), "-0.00000015");
        assert_eq!(format_real(123456789012345.0), "123456789012000");
    }

    #[test]
    fn curve_csv_format() {
        let c = series(vec![0.0, 1.0], vec![0.0, 4.0]);
        assert_eq!(curve_csv(&c), "p,value\n0,0\n1,4\n");
    }

    #[test]
    fn histogram_csv_format_and_rejection() {
        let h = spectrum_histogram(
            &Spectrum::new(Kind::Normalized, vec![0.0, 2.0]),
            2,
            0.0,
            2.0,
        )
        .unwrap();
        assert_eq!(
            histogram_csv(&h).unwrap(),
            "bin_lo,bin_hi,count\n0,1,1\n1,2,1\n"
        );
        assert!(Histogram::from_parts(vec![0.0], vec![]).is_err());
        assert!(parse_histogram_csv("bin_lo,bin_hi,count\n").is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_curve_csv("x,y\n0,0\n").is_err());
        assert!(parse_curve_csv("p,value\n0,zero\n").is_err());
        assert!(parse_curve_csv("p,value\n0\n").is_err());
        assert!(parse_histogram_csv("bin_lo,bin_hi,count\n0,1,2\n2,3,1\n").is_err());
    }

    #[test]
    fn svg_structure() {
        let svg = curve_svg(&series(vec![0.0, 1.0], vec![0.0, 3.0]), "two points");
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<rect").count(), 0);
        assert!(svg.contains("two points"));
        assert!(!svg.contains("href"));

        let values: Vec<f64> = (0..500).map(|k| k as f64 / 250.0).collect();
        let h =
            spectrum_histogram(&Spectrum::new(Kind::Normalized, values), 100, 0.0, 2.0).unwrap();
        let svg = histogram_svg(&h, "bars & <things>");
        assert_eq!(svg.matches("<rect").count(), 100);
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert!(svg.contains("bars &amp; &lt;things&gt;"));
        assert_eq!(svg, histogram_svg(&h, "bars & <things>"));
    }

    #[test]
    fn polyline_matches_data() {
        let c = series(vec![0.0, 0.25, 0.5, 1.0], vec![0.0, 2.0, 1.0, 5.0]);
        let svg = curve_svg(&c, "t");
        let frame = Frame::for_curve(&c);
        let start = svg.find("points=\"").unwrap() + 8;
        let end = start + svg[start..].find('"').unwrap();
        let pts: Vec<(f64, f64)> = svg[start..end]
            .split(' ')
            .map(|p| {
                let (a, b) = p.split_once(',').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect();
        assert_eq!(pts.len(), 4);
        for ((x, y), (px, py)) in c.xs.iter().zip(&c.ys).zip(pts) {
            assert!((frame.px(*x) - px).abs() < 1e-3);
            assert!((frame.py(*y) - py).abs() < 1e-3);
        }
    }

    #[test]
    fn tick_values_are_round() {
        assert_eq!(
            ticks(0.0, 1.0),
            vec![0.0, 0.2, 0.4, 0.6000000000000001, 0.8, 1.0]
        );
        assert_eq!(tick_label(0.6000000000000001), "0.6");
        assert_eq!(ticks(0.0, 200.0).len(), 5);
    }
}
