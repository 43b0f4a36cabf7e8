//! Text formats: the packing file and the decomposition record stream.
//!
//! Packing file layout (line oriented, 17 significant digits):
//!
//! ```text
//! separable-packing v1
//! geometry euclidean
//! rho 1.0000000000000000e0
//! lambda 9.3000000000000005e-1
//! count 2
//! c 0.0000000000000000e0 0.0000000000000000e0
//! c 2.0000000000000000e0 0.0000000000000000e0
//! ```
//!
//! Euclidean centers carry two coordinates, spherical and hyperbolic ones
//! all three model coordinates.

use crate::decomposition::{CellKind, Decomposition};
use crate::geom::{Geometry, Point};
use crate::packing::Packing;
use crate::{Error, Result};
use std::io::{BufRead, Write};

pub fn geometry_name(g: Geometry) -> &'static str {
    match g {
        Geometry::Euclidean => "euclidean",
        Geometry::Spherical => "spherical",
        Geometry::Hyperbolic => "hyperbolic",
    }
}

pub fn parse_geometry(s: &str) -> Option<Geometry> {
    match s {
        "euclidean" | "e2" => Some(Geometry::Euclidean),
        "spherical" | "sphere" | "s2" => Some(Geometry::Spherical),
        "hyperbolic" | "h2" => Some(Geometry::Hyperbolic),
        _ => None,
    }
}

/// 17 significant digits, enough for bit-faithful f64 round trips.
pub fn g17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_packing<W: Write>(mut w: W, p: &Packing) -> Result<()> {
    writeln!(w, "separable-packing v1")?;
    writeln!(w, "geometry {}", geometry_name(p.geometry))?;
    writeln!(w, "rho {}", g17(p.rho))?;
    writeln!(w, "lambda {}", g17(p.lambda))?;
    writeln!(w, "count {}", p.centers.len())?;
    for c in &p.centers {
        match p.geometry {
            Geometry::Euclidean => {
                writeln!(w, "c {} {}", g17(c.coords[0]), g17(c.coords[1]))?;
            }
            _ => writeln!(
                w,
                "c {} {} {}",
                g17(c.coords[0]),
                g17(c.coords[1]),
                g17(c.coords[2])
            )?,
        }
    }
    Ok(())
}

pub fn write_packing_to_path(path: &std::path::Path, p: &Packing) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_packing(std::io::BufWriter::new(f), p)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads and validates a packing file: header structure, model-point
/// invariants per record, and the parameter constraints. The packing
/// condition itself is checked separately by `packing::verify_packing`.
pub fn read_packing<R: BufRead>(r: R) -> Result<Packing> {
    let mut lines = r.lines().enumerate();
    let mut next_field = |tag: &str| -> Result<(usize, String)> {
        loop {
            match lines.next() {
                Some((n, Ok(l))) => {
                    let t = l.trim().to_string();
                    if t.is_empty() || t.starts_with('#') {
                        continue;
                    }
                    return match t.strip_prefix(tag) {
                        Some(rest) => Ok((n + 1, rest.trim().to_string())),
                        None => Err(parse_err(n + 1, format!("expected `{tag}`, got `{t}`"))),
                    };
                }
                Some((n, Err(e))) => return Err(parse_err(n + 1, e.to_string())),
                None => return Err(parse_err(0, format!("missing `{tag}`"))),
            }
        }
    };

    let (n, magic) = next_field("separable-packing")?;
    if magic != "v1" {
        return Err(parse_err(n, "unsupported version"));
    }
    let (n, gname) = next_field("geometry")?;
    let geometry =
        parse_geometry(&gname).ok_or_else(|| parse_err(n, format!("unknown geometry {gname}")))?;
    let (n, rho_s) = next_field("rho")?;
    let rho: f64 = rho_s.parse().map_err(|_| parse_err(n, "bad rho"))?;
    let (n, lam_s) = next_field("lambda")?;
    let lambda: f64 = lam_s.parse().map_err(|_| parse_err(n, "bad lambda"))?;
    let (n, count_s) = next_field("count")?;
    let count: usize = count_s.parse().map_err(|_| parse_err(n, "bad count"))?;

    let mut centers = Vec::with_capacity(count);
    for rec in 0..count {
        let (n, rest) = next_field("c")?;
        let vals: Vec<f64> = rest
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(n, format!("bad coordinate in record {rec}")))?;
        let point = match (geometry, vals.len()) {
            (Geometry::Euclidean, 2) => Point::euclidean(vals[0], vals[1]),
            (Geometry::Spherical, 3) => Point::spherical([vals[0], vals[1], vals[2]])
                .map_err(|_| parse_err(n, format!("record {rec}: not a unit vector")))?,
            (Geometry::Hyperbolic, 3) => Point::hyperbolic([vals[0], vals[1], vals[2]])
                .map_err(|_| parse_err(n, format!("record {rec}: not on the hyperboloid")))?,
            (_, got) => {
                return Err(parse_err(
                    n,
                    format!("record {rec}: expected coordinates, got {got} values"),
                ))
            }
        };
        centers.push(point);
    }
    Packing::new(geometry, centers, rho, lambda)
}

pub fn read_packing_from_path(path: &std::path::Path) -> Result<Packing> {
    let f = std::fs::File::open(path)?;
    read_packing(std::io::BufReader::new(f))
}

fn write_point<W: Write>(w: &mut W, p: &Point) -> Result<()> {
    write!(
        w,
        " {} {} {}",
        g17(p.coords[0]),
        g17(p.coords[1]),
        g17(p.coords[2])
    )?;
    Ok(())
}

/// One cell per record: kind, vertex count and coordinates, circumdata.
pub fn write_cells<W: Write>(mut w: W, d: &Decomposition) -> Result<()> {
    writeln!(w, "separable-cells v1")?;
    writeln!(w, "geometry {}", geometry_name(d.geometry))?;
    writeln!(w, "rho {}", g17(d.rho))?;
    writeln!(w, "saturation-radius {}", g17(d.saturation_radius))?;
    writeln!(w, "count {}", d.cells.len())?;
    for cell in &d.cells {
        let kind = match cell.kind {
            CellKind::Type1 => "type1",
            CellKind::Type2 => "type2",
        };
        write!(w, "cell {kind} nv {}", cell.boundary.len())?;
        for &v in &cell.boundary {
            write_point(&mut w, &d.points[v])?;
        }
        if let Some(r) = cell.circumradius {
            let tri = crate::geom::Triangle::new(
                d.points[cell.boundary[0]],
                d.points[cell.boundary[1]],
                d.points[cell.boundary[2]],
            )?;
            let (center, _) = crate::geom::circumcircle(&tri)?;
            write!(w, " center")?;
            write_point(&mut w, &center)?;
            write!(w, " radius {}", g17(r))?;
        }
        if let Some(apex) = cell.apex {
            write!(w, " apex")?;
            write_point(&mut w, &d.points[apex])?;
        }
        if let Some((i, j)) = cell.generating_edge {
            write!(w, " edge {i} {j}")?;
        }
        if cell.boundary_cell {
            write!(w, " boundary")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn packing_round_trip() {
        for p in [
            generators::square_grid(3).unwrap(),
            generators::platonic_caps(6).unwrap(),
        ] {
            let mut buf = Vec::new();
            write_packing(&mut buf, &p).unwrap();
            let q = read_packing(std::io::Cursor::new(&buf)).unwrap();
            assert_eq!(p.centers.len(), q.centers.len());
            assert_eq!(p.geometry, q.geometry);
            assert_eq!(p.rho, q.rho);
            assert_eq!(p.lambda, q.lambda);
            for (a, b) in p.centers.iter().zip(&q.centers) {
                assert!(a.approx_eq(b, 1e-15));
            }
            // Deterministic output.
            let mut buf2 = Vec::new();
            write_packing(&mut buf2, &q).unwrap();
            assert_eq!(buf, buf2);
        }
    }

    #[test]
    fn reader_reports_line_of_first_bad_record() {
        let text = "separable-packing v1\ngeometry spherical\nrho 0.5\nlambda 0.1\ncount 2\nc 1.0 0.0 0.0\nc 0.5 0.5 0.5\n";
        match read_packing(std::io::Cursor::new(text)) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 7);
                assert!(message.contains("record 1"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn lambda_above_rho_rejected() {
        let text = "separable-packing v1\ngeometry euclidean\nrho 1.0\nlambda 1.01\ncount 1\nc 0.0 0.0\n";
        assert!(matches!(
            read_packing(std::io::Cursor::new(text)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn cells_export_contains_kinds() {
        let p = generators::square_grid(3).unwrap();
        let m = crate::decomposition::molnar(&p.centers, p.geometry).unwrap();
        let d = crate::decomposition::refine(&m, p.rho).unwrap();
        let mut buf = Vec::new();
        write_cells(&mut buf, &d).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("cell type1 nv 3"));
        assert_eq!(text.lines().filter(|l| l.starts_with("cell ")).count(), 8);
    }
}
