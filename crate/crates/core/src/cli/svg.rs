use std::fmt::Write as _;

use super::{config_err, CliResult};

/// Filled rectangle `[x0, x1] x [y0, y1]` in model coordinates with a
/// value in `[0, 1]` that picks its colour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgCell {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub value: f64,
}

/// Drawing in model coordinates (y up): heatmap cells, an optional
/// overlaid curve and an optional outline.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SvgScene {
    pub cells: Vec<SvgCell>,
    pub curve: Option<Vec<(f64, f64)>>,
    pub outline: Option<Vec<(f64, f64)>>,
}

/// Pixels per model unit.
const SCALE: f64 = 400.0;
const MARGIN: f64 = 0.05;

/// White at 0, dark red at 1.
fn colour(v: f64) -> String {
    let v = v.clamp(0.0, 1.0);
    let r = (255.0 - 115.0 * v).round() as u8;
    let gb = (255.0 * (1.0 - v)).round() as u8;
    format!("#{r:02x}{gb:02x}{gb:02x}")
}

fn path_data(points: &[(f64, f64)], map: impl Fn((f64, f64)) -> (f64, f64)) -> String {
    let mut d = String::new();
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = map(p);
        let _ = write!(d, "{}{x:.2},{y:.2}", if i == 0 { "M" } else { " L" });
    }
    d
}

/// Renders the scene as a standalone SVG document. Coordinates are printed
/// with two decimals in pixel units, so equal scenes give equal bytes.
pub fn render_svg(scene: &SvgScene) -> CliResult<String> {
    let lines = scene.curve.iter().chain(scene.outline.iter());
    if lines.clone().any(|l| l.len() < 2) {
        return Err(config_err("a polyline needs at least two points"));
    }
    if scene.cells.is_empty() && scene.curve.is_none() && scene.outline.is_none() {
        return Err(config_err("nothing to draw"));
    }
    let xs = scene
        .cells
        .iter()
        .flat_map(|c| [c.x0, c.x1])
        .chain(lines.clone().flatten().map(|p| p.0));
    let ys = scene
        .cells
        .iter()
        .flat_map(|c| [c.y0, c.y1])
        .chain(lines.flatten().map(|p| p.1));
    let (xmin, xmax) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (ymin, ymax) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    if ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) {
        return Err(config_err("non-finite coordinates"));
    }
    let (xmin, ymin) = (xmin - MARGIN, ymin - MARGIN);
    let (xmax, ymax) = (xmax + MARGIN, ymax + MARGIN);
    let width = (xmax - xmin) * SCALE;
    let height = (ymax - ymin) * SCALE;
    let map = |(x, y): (f64, f64)| ((x - xmin) * SCALE, (ymax - y) * SCALE);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    for c in &scene.cells {
        let (x, y) = map((c.x0, c.y1));
        let _ = writeln!(
            s,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            (c.x1 - c.x0) * SCALE,
            (c.y1 - c.y0) * SCALE,
            colour(c.value)
        );
    }
    if let Some(outline) = &scene.outline {
        let _ = writeln!(
            s,
            r##"<path d="{}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##,
            path_data(outline, map)
        );
    }
    if let Some(curve) = &scene.curve {
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            path_data(curve, map)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
