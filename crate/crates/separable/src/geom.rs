//! Primitives for the three constant-curvature planes in their embedded
//! models: the affine plane `z = 1` for curvature 0, the unit sphere for
//! curvature +1, and the upper hyperboloid sheet for curvature -1.
//!
//! Geodesics are hyperplane sections of the model, so incidence, distance to
//! a line, and side-of-line tests all reduce to one inner product per
//! geometry. That keeps a single code path for the separation predicates.

use crate::{Error, Result};

/// Absolute tolerance for geometric predicates (side tests, equidistance).
pub const PREDICATE_TOL: f64 = 1e-10;
/// Tolerance for model-point and normal normalization checks.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Triangles with area below this are treated as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-14;

/// Which constant-curvature plane an object lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl Geometry {
    pub fn curvature(self) -> i32 {
        match self {
            Geometry::Euclidean => 0,
            Geometry::Spherical => 1,
            Geometry::Hyperbolic => -1,
        }
    }

    /// Area of a circular sector of radius `rho` per radian of central angle.
    pub fn sector_weight(self, rho: f64) -> f64 {
        match self {
            Geometry::Euclidean => 0.5 * rho * rho,
            Geometry::Spherical => 1.0 - rho.cos(),
            Geometry::Hyperbolic => rho.cosh() - 1.0,
        }
    }

    /// Area of the full disk of radius `rho`.
    pub fn disk_area(self, rho: f64) -> f64 {
        2.0 * std::f64::consts::PI * self.sector_weight(rho)
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn lorentz_dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

/// Lorentz analogue of the cross product: `<lcross(a,b), a>_L = 0` and
/// likewise for `b`.
fn lorentz_cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    let c = cross3(a, b);
    [c[0], c[1], -c[2]]
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn acos_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

fn asin_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).asin()
}

/// A point of one of the three planes, in its embedded model.
///
/// Euclidean points carry a third coordinate fixed to 1 so that all three
/// geometries share one representation; it is never used in metric formulas.
#[derive(Clone, Copy, Debug)]
pub struct Point {
    pub geometry: Geometry,
    pub coords: [f64; 3],
}

impl Point {
    pub fn euclidean(x: f64, y: f64) -> Self {
        Point {
            geometry: Geometry::Euclidean,
            coords: [x, y, 1.0],
        }
    }

    /// A spherical point from a vector that must already be unit length.
    pub fn spherical(coords: [f64; 3]) -> Result<Self> {
        if (norm3(coords) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidModelPoint(Geometry::Spherical));
        }
        let n = norm3(coords);
        Ok(Point {
            geometry: Geometry::Spherical,
            coords: scale3(coords, 1.0 / n),
        })
    }

    /// A spherical point from any nonzero vector, normalized.
    pub fn spherical_normalized(coords: [f64; 3]) -> Result<Self> {
        let n = norm3(coords);
        if n < NORMALIZATION_TOL {
            return Err(Error::InvalidModelPoint(Geometry::Spherical));
        }
        Ok(Point {
            geometry: Geometry::Spherical,
            coords: scale3(coords, 1.0 / n),
        })
    }

    /// A hyperbolic point on the upper hyperboloid sheet.
    pub fn hyperbolic(coords: [f64; 3]) -> Result<Self> {
        if coords[2] < 1.0 - 1e-9 || (lorentz_dot(coords, coords) + 1.0).abs() > 1e-9 {
            return Err(Error::InvalidModelPoint(Geometry::Hyperbolic));
        }
        // Re-project exactly onto the sheet.
        Ok(Self::hyperbolic_from_xy(coords[0], coords[1]))
    }

    /// The hyperboloid point above `(x0, x1)`.
    pub fn hyperbolic_from_xy(x0: f64, x1: f64) -> Self {
        Point {
            geometry: Geometry::Hyperbolic,
            coords: [x0, x1, (1.0 + x0 * x0 + x1 * x1).sqrt()],
        }
    }

    /// Reference point shared by constructions: origin, north pole, or the
    /// hyperboloid apex.
    pub fn origin(geometry: Geometry) -> Self {
        match geometry {
            Geometry::Euclidean => Point::euclidean(0.0, 0.0),
            Geometry::Spherical => Point {
                geometry,
                coords: [0.0, 0.0, 1.0],
            },
            Geometry::Hyperbolic => Point {
                geometry,
                coords: [0.0, 0.0, 1.0],
            },
        }
    }

    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        self.geometry == other.geometry
            && norm3(sub3(self.coords, other.coords)) <= tol
    }
}

fn check_same(g1: Geometry, g2: Geometry) -> Result<()> {
    if g1 != g2 {
        return Err(Error::GeometryMismatch(g1, g2));
    }
    Ok(())
}

fn check_not_antipodal(p: &Point, q: &Point) -> Result<()> {
    if p.geometry == Geometry::Spherical && norm3(add3(p.coords, q.coords)) < 1e-9 {
        return Err(Error::AntipodalPoints);
    }
    Ok(())
}

/// Geodesic distance between two points of the same plane. Antipodal
/// spherical points are at distance pi; only constructions needing a unique
/// geodesic (midpoints, lines) reject them.
pub fn distance(p: &Point, q: &Point) -> Result<f64> {
    check_same(p.geometry, q.geometry)?;
    Ok(match p.geometry {
        Geometry::Euclidean => {
            let dx = p.coords[0] - q.coords[0];
            let dy = p.coords[1] - q.coords[1];
            dx.hypot(dy)
        }
        Geometry::Spherical => acos_clamped(dot3(p.coords, q.coords)),
        Geometry::Hyperbolic => {
            let c = -lorentz_dot(p.coords, q.coords);
            c.max(1.0).acosh()
        }
    })
}

/// Midpoint of the shortest geodesic segment `[p, q]`.
pub fn midpoint(p: &Point, q: &Point) -> Result<Point> {
    check_same(p.geometry, q.geometry)?;
    check_not_antipodal(p, q)?;
    let w = add3(p.coords, q.coords);
    Ok(match p.geometry {
        Geometry::Euclidean => Point::euclidean(0.5 * w[0], 0.5 * w[1]),
        Geometry::Spherical => Point::spherical_normalized(w)?,
        Geometry::Hyperbolic => {
            let s = -lorentz_dot(w, w);
            if s <= 0.0 {
                return Err(Error::InvalidModelPoint(Geometry::Hyperbolic));
            }
            Point {
                geometry: Geometry::Hyperbolic,
                coords: scale3(w, 1.0 / s.sqrt()),
            }
        }
    })
}

/// Unit tangent vector at `p` pointing along the geodesic toward `q`.
pub fn tangent_toward(p: &Point, q: &Point) -> Result<[f64; 3]> {
    check_same(p.geometry, q.geometry)?;
    check_not_antipodal(p, q)?;
    match p.geometry {
        Geometry::Euclidean => {
            let d = [q.coords[0] - p.coords[0], q.coords[1] - p.coords[1], 0.0];
            let n = norm3(d);
            if n < NORMALIZATION_TOL {
                return Err(Error::DegenerateInput);
            }
            Ok(scale3(d, 1.0 / n))
        }
        Geometry::Spherical => {
            let t = sub3(q.coords, scale3(p.coords, dot3(p.coords, q.coords)));
            let n = norm3(t);
            if n < NORMALIZATION_TOL {
                return Err(Error::DegenerateInput);
            }
            Ok(scale3(t, 1.0 / n))
        }
        Geometry::Hyperbolic => {
            let t = add3(q.coords, scale3(p.coords, lorentz_dot(p.coords, q.coords)));
            let s = lorentz_dot(t, t);
            if s < NORMALIZATION_TOL {
                return Err(Error::DegenerateInput);
            }
            Ok(scale3(t, 1.0 / s.sqrt()))
        }
    }
}

/// The point at arclength `dist` from `p` along the geodesic toward `q`.
pub fn point_along(p: &Point, q: &Point, dist: f64) -> Result<Point> {
    let t = tangent_toward(p, q)?;
    Ok(match p.geometry {
        Geometry::Euclidean => {
            Point::euclidean(p.coords[0] + dist * t[0], p.coords[1] + dist * t[1])
        }
        Geometry::Spherical => Point {
            geometry: Geometry::Spherical,
            coords: add3(scale3(p.coords, dist.cos()), scale3(t, dist.sin())),
        },
        Geometry::Hyperbolic => Point {
            geometry: Geometry::Hyperbolic,
            coords: add3(scale3(p.coords, dist.cosh()), scale3(t, dist.sinh())),
        },
    })
}

/// Signed angle from tangent vector `u` to tangent vector `v` at point `p`,
/// measured in the oriented tangent plane, in `(-pi, pi]`.
pub fn signed_tangent_angle(p: &Point, u: [f64; 3], v: [f64; 3]) -> f64 {
    match p.geometry {
        Geometry::Euclidean => {
            let cross = u[0] * v[1] - u[1] * v[0];
            let dot = u[0] * v[0] + u[1] * v[1];
            cross.atan2(dot)
        }
        Geometry::Spherical => {
            let s = dot3(cross3(u, v), p.coords);
            s.atan2(dot3(u, v))
        }
        Geometry::Hyperbolic => {
            // Orthonormal frame (u, e2) of the tangent plane at p.
            let e2 = lorentz_cross(p.coords, u);
            let e2 = scale3(e2, 1.0 / lorentz_dot(e2, e2).sqrt());
            lorentz_dot(e2, v).atan2(lorentz_dot(u, v))
        }
    }
}

/// A geodesic line: the zero set of one linear functional on the model.
///
/// Spherical and hyperbolic lines store a unit (respectively spacelike unit)
/// normal; Euclidean lines store `[a, b, c]` with `a x + b y = c` and
/// `a^2 + b^2 = 1`.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub geometry: Geometry,
    pub normal: [f64; 3],
}

impl Line {
    pub fn euclidean(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if n < NORMALIZATION_TOL {
            return Err(Error::DegenerateInput);
        }
        Ok(Line {
            geometry: Geometry::Euclidean,
            normal: [a / n, b / n, c / n],
        })
    }

    pub fn spherical(normal: [f64; 3]) -> Result<Self> {
        let n = norm3(normal);
        if n < NORMALIZATION_TOL {
            return Err(Error::DegenerateInput);
        }
        Ok(Line {
            geometry: Geometry::Spherical,
            normal: scale3(normal, 1.0 / n),
        })
    }

    /// Hyperbolic line from a spacelike vector.
    pub fn hyperbolic(normal: [f64; 3]) -> Result<Self> {
        let s = lorentz_dot(normal, normal);
        if s < NORMALIZATION_TOL {
            return Err(Error::DegenerateInput);
        }
        Ok(Line {
            geometry: Geometry::Hyperbolic,
            normal: scale3(normal, 1.0 / s.sqrt()),
        })
    }
}

/// Value of the line's defining functional at `p`. Zero on the line, and a
/// strictly monotone function of the signed distance to it.
pub fn signed_offset(line: &Line, p: &Point) -> Result<f64> {
    check_same(line.geometry, p.geometry)?;
    Ok(match line.geometry {
        Geometry::Euclidean => {
            line.normal[0] * p.coords[0] + line.normal[1] * p.coords[1] - line.normal[2]
        }
        Geometry::Spherical => dot3(line.normal, p.coords),
        Geometry::Hyperbolic => lorentz_dot(line.normal, p.coords),
    })
}

/// Geodesic distance from `p` to the line.
pub fn point_line_distance(p: &Point, line: &Line) -> Result<f64> {
    let off = signed_offset(line, p)?;
    Ok(match p.geometry {
        Geometry::Euclidean => off.abs(),
        Geometry::Spherical => asin_clamped(off.abs()),
        Geometry::Hyperbolic => off.abs().asinh(),
    })
}

/// Signed geodesic distance from `p` to the line (positive on the side the
/// normal points to).
pub fn signed_line_distance(p: &Point, line: &Line) -> Result<f64> {
    let off = signed_offset(line, p)?;
    Ok(match p.geometry {
        Geometry::Euclidean => off,
        Geometry::Spherical => asin_clamped(off),
        Geometry::Hyperbolic => off.asinh(),
    })
}

/// The geodesic through two distinct points.
pub fn line_through(p: &Point, q: &Point) -> Result<Line> {
    check_same(p.geometry, q.geometry)?;
    check_not_antipodal(p, q)?;
    match p.geometry {
        Geometry::Euclidean => {
            let dx = q.coords[0] - p.coords[0];
            let dy = q.coords[1] - p.coords[1];
            let c = -dy * p.coords[0] + dx * p.coords[1];
            Line::euclidean(-dy, dx, c)
        }
        Geometry::Spherical => Line::spherical(cross3(p.coords, q.coords)),
        Geometry::Hyperbolic => Line::hyperbolic(lorentz_cross(p.coords, q.coords)),
    }
}

/// Perpendicular bisector of the segment `[p, q]`: the locus equidistant
/// from both points, oriented toward `p`.
pub fn perpendicular_bisector(p: &Point, q: &Point) -> Result<Line> {
    check_same(p.geometry, q.geometry)?;
    check_not_antipodal(p, q)?;
    match p.geometry {
        Geometry::Euclidean => {
            let m = midpoint(p, q)?;
            let d = sub3(p.coords, q.coords);
            let c = d[0] * m.coords[0] + d[1] * m.coords[1];
            Line::euclidean(d[0], d[1], c)
        }
        Geometry::Spherical => Line::spherical(sub3(p.coords, q.coords)),
        Geometry::Hyperbolic => Line::hyperbolic(sub3(p.coords, q.coords)),
    }
}

/// A disk of the given geodesic radius.
#[derive(Clone, Copy, Debug)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::Domain {
                what: "disk radius",
                value: radius,
            });
        }
        if center.geometry == Geometry::Spherical && radius >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain {
                what: "spherical disk radius",
                value: radius,
            });
        }
        Ok(Disk { center, radius })
    }
}

/// A non-degenerate triangle.
#[derive(Clone, Copy, Debug)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        check_same(a.geometry, b.geometry)?;
        check_same(a.geometry, c.geometry)?;
        check_not_antipodal(&a, &b)?;
        check_not_antipodal(&b, &c)?;
        check_not_antipodal(&a, &c)?;
        let t = Triangle { a, b, c };
        if triangle_area(&t)? < DEGENERATE_AREA {
            return Err(Error::DegenerateTriangle);
        }
        Ok(t)
    }

    pub fn geometry(&self) -> Geometry {
        self.a.geometry
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    /// Side lengths opposite to `a`, `b`, `c` in that order.
    pub fn side_lengths(&self) -> Result<[f64; 3]> {
        Ok([
            distance(&self.b, &self.c)?,
            distance(&self.a, &self.c)?,
            distance(&self.a, &self.b)?,
        ])
    }
}

/// Interior angle of a triangle from its side lengths; `a` is the side
/// opposite the returned angle. Uses the half-angle form of the law of
/// cosines, which stays accurate for very small and very thin triangles.
pub fn angle_from_sides(geometry: Geometry, a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let (num, den) = match geometry {
        Geometry::Euclidean => ((s - b) * (s - c), s * (s - a)),
        Geometry::Spherical => ((s - b).sin() * (s - c).sin(), s.sin() * (s - a).sin()),
        Geometry::Hyperbolic => ((s - b).sinh() * (s - c).sinh(), s.sinh() * (s - a).sinh()),
    };
    2.0 * num.max(0.0).sqrt().atan2(den.max(0.0).sqrt())
}

/// The three interior angles at `a`, `b`, `c`.
pub fn triangle_angles(t: &Triangle) -> Result<[f64; 3]> {
    let [a, b, c] = t.side_lengths()?;
    let g = t.geometry();
    Ok([
        angle_from_sides(g, a, b, c),
        angle_from_sides(g, b, c, a),
        angle_from_sides(g, c, a, b),
    ])
}

/// Unsigned triangle area: spherical excess, hyperbolic defect, or the
/// planar cross-product formula.
pub fn triangle_area(t: &Triangle) -> Result<f64> {
    let g = t.geometry();
    Ok(match g {
        Geometry::Euclidean => {
            let [p, q, r] = [t.a.coords, t.b.coords, t.c.coords];
            0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).abs()
        }
        Geometry::Spherical => {
            let [aa, ab, ac] = triangle_angles(t)?;
            (aa + ab + ac - std::f64::consts::PI).max(0.0)
        }
        Geometry::Hyperbolic => {
            let [aa, ab, ac] = triangle_angles(t)?;
            (std::f64::consts::PI - (aa + ab + ac)).max(0.0)
        }
    })
}

/// Orientation sign of an ordered point triple: the determinant of the
/// coordinate matrix, which reduces to twice the signed planar area in the
/// Euclidean model.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> f64 {
    let m = [a.coords, b.coords, c.coords];
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Circumcenter and circumradius of a triangle.
///
/// In the spherical case the minimal circumdisk must have radius < pi/2;
/// hyperbolic triangles whose "circumcircle" degenerates to a horocycle or
/// hypercycle are rejected.
pub fn circumcircle(t: &Triangle) -> Result<(Point, f64)> {
    match t.geometry() {
        Geometry::Euclidean => {
            let [a, b, c] = [t.a.coords, t.b.coords, t.c.coords];
            let d = 2.0
                * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
            if d.abs() < 1e-14 {
                return Err(Error::DegenerateTriangle);
            }
            let a2 = a[0] * a[0] + a[1] * a[1];
            let b2 = b[0] * b[0] + b[1] * b[1];
            let c2 = c[0] * c[0] + c[1] * c[1];
            let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
            let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
            let center = Point::euclidean(ux, uy);
            let r = distance(&center, &t.a)?;
            Ok((center, r))
        }
        Geometry::Spherical => {
            let m = cross3(sub3(t.a.coords, t.b.coords), sub3(t.b.coords, t.c.coords));
            let n = norm3(m);
            if n < 1e-14 {
                return Err(Error::DegenerateTriangle);
            }
            let m = scale3(m, 1.0 / n);
            let r_plus = acos_clamped(dot3(m, t.a.coords));
            let (center, radius) = if r_plus <= std::f64::consts::FRAC_PI_2 {
                (m, r_plus)
            } else {
                (scale3(m, -1.0), std::f64::consts::PI - r_plus)
            };
            if radius >= std::f64::consts::FRAC_PI_2 - 1e-12 {
                return Err(Error::NoCircumdisk);
            }
            Ok((
                Point {
                    geometry: Geometry::Spherical,
                    coords: center,
                },
                radius,
            ))
        }
        Geometry::Hyperbolic => {
            let m = lorentz_cross(sub3(t.a.coords, t.b.coords), sub3(t.b.coords, t.c.coords));
            let s = lorentz_dot(m, m);
            if s >= -1e-14 {
                // Center is not a point of the plane: circumscribed curve is a
                // horocycle or hypercycle.
                return Err(Error::NoCircumdisk);
            }
            let mut m = scale3(m, 1.0 / (-s).sqrt());
            if m[2] < 0.0 {
                m = scale3(m, -1.0);
            }
            let center = Point {
                geometry: Geometry::Hyperbolic,
                coords: m,
            };
            let r = distance(&center, &t.a)?;
            Ok((center, r))
        }
    }
}

/// Whether the closed triangle contains its circumcenter. Boundary contact
/// within `PREDICATE_TOL` counts as contained.
pub fn contains_circumcenter(t: &Triangle) -> Result<bool> {
    let (center, _) = circumcircle(t)?;
    point_in_polygon(&[t.a, t.b, t.c], &center)
}

/// Whether the closed geodesic polygon (vertices in boundary order) contains
/// `p`: for each edge, `p` must be on the same side as the rest of the
/// polygon. Intended for convex polygons and triangles.
pub fn point_in_polygon(vertices: &[Point], p: &Point) -> Result<bool> {
    let k = vertices.len();
    for i in 0..k {
        let u = &vertices[i];
        let v = &vertices[(i + 1) % k];
        let line = line_through(u, v)?;
        let sp = signed_offset(&line, p)?;
        // Reference side: the polygon vertex with the largest offset.
        let mut reference = 0.0f64;
        for (j, w) in vertices.iter().enumerate() {
            if j == i || j == (i + 1) % k {
                continue;
            }
            let sw = signed_offset(&line, w)?;
            if sw.abs() > reference.abs() {
                reference = sw;
            }
        }
        if reference.abs() <= PREDICATE_TOL {
            return Err(Error::DegenerateInput);
        }
        if sp * reference.signum() < -PREDICATE_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `line` separates disks `a` and `b` while staying disjoint from
/// the interior of every disk in `all`. Tangency counts as disjoint.
pub fn line_separates_disks(line: &Line, a: &Disk, b: &Disk, all: &[Disk]) -> Result<bool> {
    for d in all {
        check_same(line.geometry, d.center.geometry)?;
        if point_line_distance(&d.center, line)? < d.radius - 1e-12 {
            return Ok(false);
        }
    }
    let sa = signed_offset(line, &a.center)?;
    let sb = signed_offset(line, &b.center)?;
    Ok(sa * sb < 0.0)
}

/// Area of a simple geodesic polygon given by its boundary vertex cycle,
/// computed as a fan of signed triangle areas. Works for the non-convex
/// cells produced by bridge surgery as long as the boundary is simple.
pub fn polygon_area(vertices: &[Point]) -> Result<f64> {
    if vertices.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: vertices.len(),
        });
    }
    let root = &vertices[0];
    let mut total = 0.0;
    for i in 1..vertices.len() - 1 {
        let b = &vertices[i];
        let c = &vertices[i + 1];
        let t = Triangle {
            a: *root,
            b: *b,
            c: *c,
        };
        let area = match triangle_area(&t) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if area < DEGENERATE_AREA {
            continue;
        }
        total += orientation(root, b, c).signum() * area;
    }
    Ok(total.abs())
}

/// Poincare disk coordinates of a hyperbolic point (identity on the first
/// two coordinates for the other geometries, for uniform plotting).
pub fn poincare_disk_coords(p: &Point) -> [f64; 2] {
    match p.geometry {
        Geometry::Hyperbolic => {
            let d = 1.0 + p.coords[2];
            [p.coords[0] / d, p.coords[1] / d]
        }
        _ => [p.coords[0], p.coords[1]],
    }
}

/// Whether `p` lies on the closed geodesic segment `[a, b]`, detected by
/// additivity of distances within `tol`.
pub fn on_segment(a: &Point, b: &Point, p: &Point, tol: f64) -> Result<bool> {
    let d = distance(a, b)?;
    let da = distance(a, p)?;
    let db = distance(p, b)?;
    Ok((da + db - d).abs() <= tol)
}

/// Intersection points of the geodesics through two segments, restricted to
/// both segments. At most two points (the spherical case can meet twice).
pub fn segment_intersections(
    a1: &Point,
    b1: &Point,
    a2: &Point,
    b2: &Point,
) -> Result<Vec<Point>> {
    let l1 = line_through(a1, b1)?;
    let l2 = line_through(a2, b2)?;
    let g = a1.geometry;
    let mut candidates: Vec<Point> = Vec::new();
    match g {
        Geometry::Euclidean => {
            // Homogeneous line representations (a, b, -c).
            let u = [l1.normal[0], l1.normal[1], -l1.normal[2]];
            let v = [l2.normal[0], l2.normal[1], -l2.normal[2]];
            let x = cross3(u, v);
            if x[2].abs() > 1e-14 {
                candidates.push(Point::euclidean(x[0] / x[2], x[1] / x[2]));
            }
        }
        Geometry::Spherical => {
            let x = cross3(l1.normal, l2.normal);
            if norm3(x) > 1e-14 {
                candidates.push(Point::spherical_normalized(x)?);
                candidates.push(Point::spherical_normalized(scale3(x, -1.0))?);
            }
        }
        Geometry::Hyperbolic => {
            let x = lorentz_cross(l1.normal, l2.normal);
            let s = lorentz_dot(x, x);
            if s < -1e-14 {
                let mut x = scale3(x, 1.0 / (-s).sqrt());
                if x[2] < 0.0 {
                    x = scale3(x, -1.0);
                }
                candidates.push(Point {
                    geometry: g,
                    coords: x,
                });
            }
        }
    }
    let mut out = Vec::new();
    for c in candidates {
        if on_segment(a1, b1, &c, 1e-9)? && on_segment(a2, b2, &c, 1e-9)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Interior angles of a simple geodesic polygon, one per vertex, each in
/// `(0, 2 pi)`. Reflex vertices (bridge truncation points) are handled.
pub fn polygon_interior_angles(vertices: &[Point]) -> Result<Vec<f64>> {
    let k = vertices.len();
    if k < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: k });
    }
    // Ensure counterclockwise order so the signed turn convention is fixed.
    let mut idx: Vec<usize> = (0..k).collect();
    let mut signed = 0.0;
    for i in 1..k - 1 {
        signed += orientation(&vertices[0], &vertices[i], &vertices[i + 1]);
    }
    if signed < 0.0 {
        idx.reverse();
    }
    let mut angles = vec![0.0; k];
    for pos in 0..k {
        let prev = vertices[idx[(pos + k - 1) % k]];
        let here = vertices[idx[pos]];
        let next = vertices[idx[(pos + 1) % k]];
        let t_next = tangent_toward(&here, &next)?;
        let t_prev = tangent_toward(&here, &prev)?;
        let mut ang = signed_tangent_angle(&here, t_next, t_prev);
        if ang <= 0.0 {
            ang += 2.0 * std::f64::consts::PI;
        }
        angles[idx[pos]] = ang;
    }
    Ok(angles)
}
