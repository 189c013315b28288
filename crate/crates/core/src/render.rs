//! Deterministic SVG pictures of real line arrangements in the affine chart
//! `z = 1`.

use std::fmt::Write as _;

use crate::arrangement::{classify_intersections, is_real};
use crate::error::{Error, Result};
use crate::point::PointP2;
use crate::poly::LinearForm;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewBox {
    pub min_x: f64,
    pub min_y: f64,
    pub width: f64,
    pub height: f64,
}

impl ViewBox {
    /// The square `[-r, r]^2`.
    pub fn centered(r: f64) -> Self {
        ViewBox {
            min_x: -r,
            min_y: -r,
            width: 2.0 * r,
            height: 2.0 * r,
        }
    }

    fn max_x(&self) -> f64 {
        self.min_x + self.width
    }

    fn max_y(&self) -> f64 {
        self.min_y + self.height
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.min_x && x <= self.max_x() && y >= self.min_y && y <= self.max_y()
    }
}

impl Default for ViewBox {
    fn default() -> Self {
        ViewBox::centered(2.2)
    }
}

impl std::str::FromStr for ViewBox {
    type Err = Error;

    /// `R` for `[-R, R]^2`, or `MIN_X,MIN_Y,WIDTH,HEIGHT`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad viewbox {s:?}")))?;
        let vb = match parts[..] {
            [r] => ViewBox::centered(r),
            [min_x, min_y, width, height] => ViewBox {
                min_x,
                min_y,
                width,
                height,
            },
            _ => {
                return Err(Error::Parse(format!(
                    "bad viewbox {s:?}: give R or MIN_X,MIN_Y,WIDTH,HEIGHT"
                )))
            }
        };
        if !(vb.width > 0.0 && vb.height > 0.0 && vb.min_x.is_finite() && vb.min_y.is_finite()) {
            return Err(Error::Parse(format!(
                "bad viewbox {s:?}: empty or infinite"
            )));
        }
        Ok(vb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// `None` means `[-2.2, 2.2]^2`, widened when needed so that every
    /// marked point at finite distance is visible.
    pub viewbox: Option<ViewBox>,
    /// Width of the picture in pixels; the height follows the viewbox.
    pub pixels: f64,
    pub show_circle: bool,
    /// Also mark points where exactly two lines meet, with larger dots.
    pub show_ordinary: bool,
    /// Points drawn with larger dots.
    pub highlight: Vec<PointP2>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            viewbox: None,
            pixels: 600.0,
            show_circle: true,
            show_ordinary: false,
            highlight: Vec::new(),
        }
    }
}

/// What ended up in a picture.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub svg: String,
    pub segments: usize,
    pub dots: usize,
    /// Marked points that fall outside the viewbox or at infinity.
    pub hidden_dots: usize,
}

/// Clips `a X + b Y + c = 0` to the viewbox.
fn clip(a: f64, b: f64, c: f64, vb: &ViewBox) -> Option<[(f64, f64); 2]> {
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b.abs() > 1e-12 {
        for x in [vb.min_x, vb.max_x()] {
            let y = -(a * x + c) / b;
            if y >= vb.min_y - 1e-12 && y <= vb.max_y() + 1e-12 {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [vb.min_y, vb.max_y()] {
            let x = -(b * y + c) / a;
            if x >= vb.min_x - 1e-12 && x <= vb.max_x() + 1e-12 {
                hits.push((x, y));
            }
        }
    }
    // parametrize along the direction (-b, a) and keep the extremes
    let key = |p: &(f64, f64)| -b * p.0 + a * p.1;
    hits.sort_by(|p, q| key(p).total_cmp(&key(q)));
    let (first, last) = (*hits.first()?, *hits.last()?);
    ((first.0 - last.0).abs() + (first.1 - last.1).abs() > 1e-12).then_some([first, last])
}

fn real_coords(line: &LinearForm) -> Result<[f64; 3]> {
    let c = line.coeffs();
    if !c.iter().all(is_real) {
        return Err(Error::NotReal);
    }
    Ok(c.map(|e| e.approx().re))
}

/// Draws the lines, the unit circle and dots at points of multiplicity at
/// least 3 (and 2 with `show_ordinary`). Refuses lines that are not real.
pub fn render_svg(lines: &[LinearForm], opts: &RenderOptions) -> Result<Rendered> {
    let coeffs = lines.iter().map(real_coords).collect::<Result<Vec<_>>>()?;
    let stats = classify_intersections(lines)?;
    let vb = opts.viewbox.unwrap_or_else(|| {
        let marked = stats
            .points
            .iter()
            .zip(&stats.incidences)
            .filter(|(_, inc)| inc.len() >= 3 || (opts.show_ordinary && inc.len() == 2))
            .map(|(p, _)| p)
            .chain(&opts.highlight);
        let reach = marked
            .filter_map(|p| p.affine_approx())
            .map(|(x, y)| x.abs().max(y.abs()))
            .fold(0.0, f64::max);
        ViewBox::centered(if reach * 1.08 > 2.2 {
            (reach * 1.08 * 10.0).ceil() / 10.0
        } else {
            2.2
        })
    });
    let scale = opts.pixels / vb.width;
    let height = vb.height * scale;
    let sx = |x: f64| (x - vb.min_x) * scale;
    let sy = |y: f64| (vb.max_y() - y) * scale;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.3} {:.3}">"#,
        opts.pixels, height, opts.pixels, height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if opts.show_circle {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#888888" stroke-width="1"/>"##,
            sx(0.0),
            sy(0.0),
            scale
        );
    }
    let mut segments = 0;
    let _ = writeln!(svg, r##"<g stroke="#1f4e9c" stroke-width="1.2">"##);
    for (i, [a, b, c]) in coeffs.iter().enumerate() {
        if let Some([p, q]) = clip(*a, *b, *c, &vb) {
            let _ = writeln!(
                svg,
                r#"<line id="L{i}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                sx(p.0),
                sy(p.1),
                sx(q.0),
                sy(q.1)
            );
            segments += 1;
        }
    }
    let _ = writeln!(svg, "</g>");

    let mut dots = 0;
    let mut hidden = 0;
    let mut dot = |svg: &mut String, p: &PointP2, r: f64, fill: &str| match p.affine_approx() {
        Some((x, y)) if vb.contains(x, y) => {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.3}" cy="{:.3}" r="{r}" fill="{fill}"/>"#,
                sx(x),
                sy(y)
            );
            dots += 1;
        }
        _ => hidden += 1,
    };
    for (p, inc) in stats.points.iter().zip(&stats.incidences) {
        if inc.len() == 2 && opts.show_ordinary {
            dot(&mut svg, p, 5.5, "#c0392b");
        }
    }
    for (p, inc) in stats.points.iter().zip(&stats.incidences) {
        if inc.len() >= 3 && !opts.highlight.contains(p) {
            dot(&mut svg, p, 4.0, "black");
        }
    }
    for p in &opts.highlight {
        dot(&mut svg, p, 6.5, "#e67e22");
    }
    let _ = writeln!(svg, "</svg>");
    Ok(Rendered {
        svg,
        segments,
        dots,
        hidden_dots: hidden,
    })
}
