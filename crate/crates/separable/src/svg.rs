//! Minimal static SVG 1.1 output: decomposition plots (direct coordinates
//! for the plane, orthographic view for the sphere, Poincare disk for the
//! hyperbolic plane) and simple curve plots for parameter sweeps. Output is
//! deterministic so files can be diffed in tests.

use crate::decomposition::Decomposition;
use crate::geom::{self, Geometry, Point};
use crate::packing::Packing;
use crate::Result;

fn project(p: &Point) -> [f64; 2] {
    match p.geometry {
        Geometry::Euclidean => [p.coords[0], p.coords[1]],
        // Orthographic view down the +z axis.
        Geometry::Spherical => [p.coords[0], p.coords[1]],
        Geometry::Hyperbolic => geom::poincare_disk_coords(p),
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

struct Canvas {
    min: [f64; 2],
    max: [f64; 2],
    paths: Vec<String>,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
            paths: Vec::new(),
        }
    }

    fn include(&mut self, p: [f64; 2]) {
        for k in 0..2 {
            self.min[k] = self.min[k].min(p[k]);
            self.max[k] = self.max[k].max(p[k]);
        }
    }

    fn polyline(&mut self, pts: &[[f64; 2]], style: &str) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            self.include(*p);
            // SVG y axis points down.
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd}{} {} ", fmt(p[0]), fmt(-p[1])));
        }
        self.paths
            .push(format!("<path d=\"{}\" fill=\"none\" {style}/>", d.trim_end()));
    }

    fn finish(self) -> String {
        let (w, h) = (
            (self.max[0] - self.min[0]).max(1e-6),
            (self.max[1] - self.min[1]).max(1e-6),
        );
        let pad = 0.05 * w.max(h);
        let vb = format!(
            "{} {} {} {}",
            fmt(self.min[0] - pad),
            fmt(-self.max[1] - pad),
            fmt(w + 2.0 * pad),
            fmt(h + 2.0 * pad)
        );
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{vb}\" width=\"800\" height=\"800\">\n"
        ));
        for p in &self.paths {
            out.push_str(p);
            out.push('\n');
        }
        out.push_str("</svg>\n");
        out
    }
}

fn sample_edge(a: &Point, b: &Point) -> Result<Vec<[f64; 2]>> {
    let d = geom::distance(a, b)?;
    let n = 16;
    let mut pts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = d * i as f64 / n as f64;
        let p = if i == 0 {
            *a
        } else if i == n {
            *b
        } else {
            geom::point_along(a, b, t)?
        };
        pts.push(project(&p));
    }
    Ok(pts)
}

fn sample_circle(center: &Point, radius: f64) -> Result<Vec<[f64; 2]>> {
    // Walk the circle as points at distance `radius` in rotating directions.
    let east = match center.geometry {
        Geometry::Euclidean => Point::euclidean(center.coords[0] + 1.0, center.coords[1]),
        Geometry::Spherical => {
            Point::spherical_normalized([center.coords[0] + 1e-3, center.coords[1], center.coords[2]])?
        }
        Geometry::Hyperbolic => {
            Point::hyperbolic_from_xy(center.coords[0] + 1e-3, center.coords[1])
        }
    };
    let t0 = geom::tangent_toward(center, &east)?;
    let n = 48;
    let mut pts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ang = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        // Rotate the tangent in the tangent plane by composing the two
        // basis directions.
        let p = circle_point(center, t0, radius, ang)?;
        pts.push(project(&p));
    }
    Ok(pts)
}

fn circle_point(center: &Point, t0: [f64; 3], radius: f64, ang: f64) -> Result<Point> {
    // Second basis vector of the tangent plane.
    let c = center.coords;
    let t1 = match center.geometry {
        Geometry::Euclidean => [-t0[1], t0[0], 0.0],
        Geometry::Spherical => [
            c[1] * t0[2] - c[2] * t0[1],
            c[2] * t0[0] - c[0] * t0[2],
            c[0] * t0[1] - c[1] * t0[0],
        ],
        Geometry::Hyperbolic => {
            let x = [
                c[1] * t0[2] - c[2] * t0[1],
                c[2] * t0[0] - c[0] * t0[2],
                c[0] * t0[1] - c[1] * t0[0],
            ];
            let v = [x[0], x[1], -x[2]];
            let s = (v[0] * v[0] + v[1] * v[1] - v[2] * v[2]).abs().sqrt().max(1e-300);
            [v[0] / s, v[1] / s, v[2] / s]
        }
    };
    let dir = [
        ang.cos() * t0[0] + ang.sin() * t1[0],
        ang.cos() * t0[1] + ang.sin() * t1[1],
        ang.cos() * t0[2] + ang.sin() * t1[2],
    ];
    Ok(match center.geometry {
        Geometry::Euclidean => Point::euclidean(c[0] + radius * dir[0], c[1] + radius * dir[1]),
        Geometry::Spherical => Point {
            geometry: Geometry::Spherical,
            coords: [
                radius.cos() * c[0] + radius.sin() * dir[0],
                radius.cos() * c[1] + radius.sin() * dir[1],
                radius.cos() * c[2] + radius.sin() * dir[2],
            ],
        },
        Geometry::Hyperbolic => Point {
            geometry: Geometry::Hyperbolic,
            coords: [
                radius.cosh() * c[0] + radius.sinh() * dir[0],
                radius.cosh() * c[1] + radius.sinh() * dir[1],
                radius.cosh() * c[2] + radius.sinh() * dir[2],
            ],
        },
    })
}

/// Renders the refined decomposition: solid cell edges, dashed edges for
/// the type-2 bridge structure, plus the disks when the packing is given.
pub fn render_decomposition(d: &Decomposition, packing: Option<&Packing>) -> Result<String> {
    let mut canvas = Canvas::new();
    if let Some(p) = packing {
        for c in &p.centers {
            let pts = sample_circle(c, p.rho)?;
            canvas.polyline(&pts, "stroke=\"#9ecae1\" stroke-width=\"0.8%\"");
            if p.lambda > 0.0 {
                let pts = sample_circle(c, p.lambda)?;
                canvas.polyline(
                    &pts,
                    "stroke=\"#c6dbef\" stroke-width=\"0.5%\" stroke-dasharray=\"0.02 0.02\"",
                );
            }
        }
    }
    for cell in &d.cells {
        let k = cell.boundary.len();
        for i in 0..k {
            let a = &d.points[cell.boundary[i]];
            let b = &d.points[cell.boundary[(i + 1) % k]];
            let pts = sample_edge(a, b)?;
            let dashed = cell.boundary[i] >= d.source_count
                || cell.boundary[(i + 1) % k] >= d.source_count;
            let style = if dashed {
                "stroke=\"#d62728\" stroke-width=\"0.6%\" stroke-dasharray=\"0.03 0.03\""
            } else {
                "stroke=\"#000000\" stroke-width=\"0.6%\""
            };
            canvas.polyline(&pts, style);
        }
    }
    Ok(canvas.finish())
}

/// Simple multi-curve plot: each named curve becomes one polyline, scaled
/// into a fixed frame, with a small legend.
pub fn render_curves(curves: &[(String, Vec<(f64, f64)>)]) -> String {
    const COLORS: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#000000",
    ];
    let (mut min, mut max) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for (_, pts) in curves {
        for &(x, y) in pts {
            min[0] = min[0].min(x);
            min[1] = min[1].min(y);
            max[0] = max[0].max(x);
            max[1] = max[1].max(y);
        }
    }
    let span = [
        (max[0] - min[0]).max(1e-12),
        (max[1] - min[1]).max(1e-12),
    ];
    let (w, h) = (720.0, 480.0);
    let sx = |x: f64| 40.0 + (x - min[0]) / span[0] * w;
    let sy = |y: f64| 20.0 + (max[1] - y) / span[1] * h;
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 800 560\" width=\"800\" height=\"560\">\n",
    );
    out.push_str(&format!(
        "<rect x=\"40\" y=\"20\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"#888888\"/>\n"
    ));
    for (ci, (name, pts)) in curves.iter().enumerate() {
        let color = COLORS[ci % COLORS.len()];
        let mut dstr = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            dstr.push_str(&format!("{cmd}{} {} ", fmt(sx(x)), fmt(sy(y))));
        }
        out.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            dstr.trim_end()
        ));
        out.push_str(&format!(
            "<text x=\"50\" y=\"{}\" fill=\"{color}\" font-size=\"14\">{name}</text>\n",
            40 + 18 * ci
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition;
    use crate::generators;

    #[test]
    fn decomposition_svg_is_deterministic() {
        let p = generators::square_grid(3).unwrap();
        let m = decomposition::molnar(&p.centers, p.geometry).unwrap();
        let d = decomposition::refine(&m, p.rho).unwrap();
        let a = render_decomposition(&d, Some(&p)).unwrap();
        let b = render_decomposition(&d, Some(&p)).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains("</svg>"));
    }

    #[test]
    fn curve_svg_contains_names() {
        let svg = render_curves(&[
            ("low".into(), vec![(0.0, 0.0), (1.0, 1.0)]),
            ("high".into(), vec![(0.0, 1.0), (1.0, 2.0)]),
        ]);
        assert!(svg.contains(">low<") && svg.contains(">high<"));
    }
}
