//! The extremal isosceles triangle families.
//!
//! For a fixed separation radius `lambda`, the family triangle with
//! half-base `y` has legs of twice the half-leg given by [`formulas`]; its
//! defining property is that the line through the midpoints of a leg and the
//! base is tangent to all three vertex disks of radius `lambda`. Closed
//! forms for the area and circumradius are provided together with an
//! explicit construction in the embedded model, so each formula can be
//! cross-checked against measured values.

use crate::formulas::{self, Variant};
use crate::geom::{self, Geometry, Point, Triangle};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Which family a triangle belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Spherical family with half-leg <= pi/4.
    SphericalOne,
    /// Spherical family with half-leg >= pi/4.
    SphericalTwo,
    Hyperbolic,
    Euclidean,
    /// Regular triangle of edge `2 rho`; `half_base = half_leg = rho`.
    Regular,
}

/// An isosceles triangle described by its half-base and half-leg.
#[derive(Clone, Copy, Debug)]
pub struct IsoTriangle {
    pub geometry: Geometry,
    pub family: Family,
    pub half_base: f64,
    pub half_leg: f64,
    pub lambda: f64,
}

/// Family member with half-base `y` for the given separation radius.
pub fn family_triangle(
    geometry: Geometry,
    variant: Option<Variant>,
    y: f64,
    lambda: f64,
) -> Result<IsoTriangle> {
    let x = formulas::half_leg(geometry, variant, y, lambda)?;
    let family = match (geometry, variant) {
        (Geometry::Spherical, Some(Variant::One)) => Family::SphericalOne,
        (Geometry::Spherical, Some(Variant::Two)) => Family::SphericalTwo,
        (Geometry::Hyperbolic, _) => Family::Hyperbolic,
        (Geometry::Euclidean, _) => Family::Euclidean,
        _ => {
            return Err(Error::Domain {
                what: "spherical family needs a variant",
                value: y,
            })
        }
    };
    Ok(IsoTriangle {
        geometry,
        family,
        half_base: y,
        half_leg: x,
        lambda,
    })
}

/// Regular triangle of edge length `2 rho`.
pub fn regular_triangle(geometry: Geometry, rho: f64) -> Result<IsoTriangle> {
    if !(rho > 0.0) {
        return Err(Error::Domain {
            what: "rho",
            value: rho,
        });
    }
    if geometry == Geometry::Spherical && 2.0 * rho.sin() / 3f64.sqrt() > 1.0 {
        // No spherical regular triangle of side 2 rho (needs rho <= pi/3).
        return Err(Error::Domain {
            what: "spherical regular triangle side",
            value: rho,
        });
    }
    Ok(IsoTriangle {
        geometry,
        family: Family::Regular,
        half_base: rho,
        half_leg: rho,
        lambda: 0.0,
    })
}

impl IsoTriangle {
    /// Edge lengths `(base, leg)`.
    pub fn edges(&self) -> (f64, f64) {
        (2.0 * self.half_base, 2.0 * self.half_leg)
    }

    /// Area from the closed forms of the family.
    pub fn area(&self) -> Result<f64> {
        match self.family {
            Family::SphericalOne => spherical_family_area(self.half_base, self.lambda, true),
            Family::SphericalTwo => spherical_family_area(self.half_base, self.lambda, false),
            Family::Hyperbolic => hyperbolic_family_area(self.half_base, self.lambda),
            Family::Euclidean => {
                // Base 2y, legs 2x: the height against a leg is 2 lambda,
                // so the area collapses to 2 lambda x.
                Ok(2.0 * self.lambda * self.half_leg)
            }
            Family::Regular => regular_area(self.geometry, self.half_base),
        }
    }

    /// Circumradius from the closed forms.
    pub fn circumradius(&self) -> Result<f64> {
        match self.family {
            Family::SphericalOne => {
                spherical_family_circumradius(self.half_base, self.lambda, true)
            }
            Family::SphericalTwo => {
                spherical_family_circumradius(self.half_base, self.lambda, false)
            }
            Family::Hyperbolic => hyperbolic_family_circumradius(self.half_base, self.lambda),
            Family::Euclidean => {
                let (y, lambda) = (self.half_base, self.lambda);
                Ok(y.powi(3) / (2.0 * lambda * (y * y - lambda * lambda).sqrt()))
            }
            Family::Regular => regular_circumradius(self.geometry, self.half_base),
        }
    }

    /// Sum of the interior angles, derived from the area.
    pub fn angle_sum(&self) -> Result<f64> {
        Ok(match self.geometry {
            Geometry::Euclidean => PI,
            Geometry::Spherical => PI + self.area()?,
            Geometry::Hyperbolic => PI - self.area()?,
        })
    }

    /// Explicit vertices in the embedded model: base symmetric about a
    /// meridian, apex on it. Returns `[apex, base1, base2]`.
    pub fn vertices(&self) -> Result<[Point; 3]> {
        iso_vertices(self.geometry, self.half_base, self.half_leg)
    }

    pub fn triangle(&self) -> Result<Triangle> {
        let [p, q1, q2] = self.vertices()?;
        Triangle::new(p, q1, q2)
    }
}

/// Vertices of the isosceles triangle with half-base `y` and half-leg `x`:
/// base endpoints at distance `y` either side of a reference point, apex at
/// height `t` above it with `d(apex, base_i) = 2x`.
pub fn iso_vertices(geometry: Geometry, y: f64, x: f64) -> Result<[Point; 3]> {
    match geometry {
        Geometry::Euclidean => {
            let h2 = 4.0 * x * x - y * y;
            if h2 <= 0.0 {
                return Err(Error::DegenerateTriangle);
            }
            Ok([
                Point::euclidean(0.0, h2.sqrt()),
                Point::euclidean(y, 0.0),
                Point::euclidean(-y, 0.0),
            ])
        }
        Geometry::Spherical => {
            let ct = (2.0 * x).cos() / y.cos();
            if ct.abs() > 1.0 {
                return Err(Error::DegenerateTriangle);
            }
            let t = ct.acos();
            Ok([
                Point::spherical([0.0, t.sin(), t.cos()])?,
                Point::spherical([y.sin(), 0.0, y.cos()])?,
                Point::spherical([-y.sin(), 0.0, y.cos()])?,
            ])
        }
        Geometry::Hyperbolic => {
            let ct = (2.0 * x).cosh() / y.cosh();
            if ct < 1.0 {
                return Err(Error::DegenerateTriangle);
            }
            let t = ct.acosh();
            Ok([
                Point::hyperbolic([0.0, t.sinh(), t.cosh()])?,
                Point::hyperbolic([y.sinh(), 0.0, y.cosh()])?,
                Point::hyperbolic([-y.sinh(), 0.0, y.cosh()])?,
            ])
        }
    }
}

fn spherical_family_area(y: f64, lambda: f64, family_one: bool) -> Result<f64> {
    let s = y.sin().powi(2);
    let (l, c) = (lambda.sin(), lambda.cos());
    let (l2, c2) = (l * l, c * c);
    if s < l2 {
        return Err(Error::Domain {
            what: "spherical half-base y",
            value: y,
        });
    }
    let p = ((s - l2) * (s * c2 - l2)).max(0.0);
    let denom = s * c2;
    if family_one {
        // cos(area/2) = (sqrt(P) + l^2 cos y) / (s c^2). The complement
        // d = 1 - cos(area/2) admits the subtraction-free form
        //   d = s^2 l^2 / ((1 + u)^2 (s c^2 - l^2 u + v m)),
        // with u = cos y, v = sqrt(s - l^2), m = sqrt(s c^2 - l^2), using
        // (s c^2 - l^2 u)^2 - P = s^3 l^2 c^2 / (1 + u)^2 and
        // s c^2 - l^2 u = (s c^2 - l^2) + l^2 (1 - cos y).
        let u = y.cos();
        let v = (s - l2).max(0.0).sqrt();
        let m2 = (s * c2 - l2).max(0.0);
        let one_minus_u = 2.0 * (0.5 * y).sin().powi(2);
        let base = m2 + l2 * one_minus_u + v * m2.sqrt();
        let d = s * s * l2 / ((1.0 + u).powi(2) * base);
        // area = 4 asin(sqrt(d / 2)).
        Ok(4.0 * (0.5 * d).sqrt().min(1.0).asin())
    } else {
        let cos_half = ((-p.sqrt() + l2 * y.cos()) / denom).clamp(-1.0, 1.0);
        Ok(2.0 * cos_half.acos())
    }
}

fn hyperbolic_family_area(y: f64, lambda: f64) -> Result<f64> {
    let s = y.sinh().powi(2);
    let (l, c) = (lambda.sinh(), lambda.cosh());
    let (l2, c2) = (l * l, c * c);
    if s <= l2 {
        return Err(Error::Domain {
            what: "hyperbolic half-base y",
            value: y,
        });
    }
    // cos(area/2) = (sqrt(P) + l^2 cosh y) / (s c^2): the hyperbolic defect
    // satisfies area/2 = pi/2 - (alpha + beta), so the right-hand side is
    // sin(alpha + beta), a plain cosine of the half-area. The complement
    // d = 1 - cos(area/2) admits the subtraction-free form
    //   d = s^2 l^2 / ((1 + u)^2 (s c^2 - l^2 u + v m)),
    // with u = cosh y, v = sqrt(s - l^2), m = sqrt(s c^2 - l^2), using
    // (s c^2 - l^2 u)^2 - P = s^3 l^2 c^2 / (1 + u)^2 and
    // s c^2 - l^2 u = (s c^2 - l^2) - l^2 (cosh y - 1).
    let u = y.cosh();
    let v = (s - l2).sqrt();
    let m2 = s * c2 - l2;
    let u_minus_one = 2.0 * (0.5 * y).sinh().powi(2);
    let base = m2 - l2 * u_minus_one + v * m2.sqrt();
    let d = s * s * l2 / ((1.0 + u).powi(2) * base);
    // area = 4 asin(sqrt(d / 2)).
    Ok(4.0 * (0.5 * d).sqrt().min(1.0).asin())
}

fn spherical_family_circumradius(y: f64, lambda: f64, family_one: bool) -> Result<f64> {
    let (sy, cy) = (y.sin(), y.cos());
    let (l, c) = (lambda.sin(), lambda.cos());
    let (s, l2, c2) = (sy * sy, l * l, c * c);
    if s < l2 {
        return Err(Error::Domain {
            what: "spherical half-base y",
            value: y,
        });
    }
    let t1 = cy * cy * (s * c2 - l2).max(0.0).sqrt();
    let t2 = cy * (s - l2).max(0.0).sqrt();
    let sign = if family_one { 1.0 } else { -1.0 };
    let cot = l / c2 * (sign * t1 + t2) / (sy * s);
    // R in (0, pi): inverse cotangent via atan2.
    Ok(1f64.atan2(cot))
}

fn hyperbolic_family_circumradius(y: f64, lambda: f64) -> Result<f64> {
    let (sy, cy) = (y.sinh(), y.cosh());
    let (l, c) = (lambda.sinh(), lambda.cosh());
    let (s, l2, c2) = (sy * sy, l * l, c * c);
    if s <= l2 {
        return Err(Error::Domain {
            what: "hyperbolic half-base y",
            value: y,
        });
    }
    let coth = l / c2 * (cy * cy * (s * c2 - l2).sqrt() + cy * (s - l2).sqrt()) / (sy * s);
    if coth <= 1.0 {
        return Err(Error::NoCircumdisk);
    }
    // R = arcoth(coth) = atanh(1 / coth).
    Ok((1.0 / coth).atanh())
}

fn regular_area(geometry: Geometry, rho: f64) -> Result<f64> {
    Ok(match geometry {
        Geometry::Euclidean => 3f64.sqrt() * rho * rho,
        Geometry::Spherical => {
            let c = (2.0 * rho).cos();
            3.0 * ((c / (1.0 + c)).clamp(-1.0, 1.0)).acos() - PI
        }
        Geometry::Hyperbolic => {
            let c = (2.0 * rho).cosh();
            PI - 3.0 * ((c / (1.0 + c)).clamp(-1.0, 1.0)).acos()
        }
    })
}

fn regular_circumradius(geometry: Geometry, rho: f64) -> Result<f64> {
    Ok(match geometry {
        Geometry::Euclidean => 2.0 * rho / 3f64.sqrt(),
        Geometry::Spherical => {
            let s = 2.0 * rho.sin() / 3f64.sqrt();
            if s > 1.0 {
                return Err(Error::Domain {
                    what: "spherical regular triangle side",
                    value: rho,
                });
            }
            s.asin()
        }
        Geometry::Hyperbolic => (2.0 * rho.sinh() / 3f64.sqrt()).asinh(),
    })
}

/// Whether the midline through the midpoints of one leg and the base is at
/// distance exactly `lambda` (within 1e-9) from all three vertices: the
/// tangency configuration defining the families.
pub fn satisfies_midline_tangency(t: &IsoTriangle) -> Result<bool> {
    satisfies_midline_tangency_at(t, t.lambda)
}

/// Same check against an explicit `lambda`.
pub fn satisfies_midline_tangency_at(t: &IsoTriangle, lambda: f64) -> Result<bool> {
    let [apex, q1, q2] = t.vertices()?;
    let m_leg = geom::midpoint(&apex, &q1)?;
    let m_base = geom::midpoint(&q1, &q2)?;
    let line = geom::line_through(&m_leg, &m_base)?;
    for v in [apex, q1, q2] {
        if (geom::point_line_distance(&v, &line)? - lambda).abs() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Density of the two disks of radius `rho` centered at the base vertices
/// of an isosceles triangle with legs `x` and base `y`, relative to the
/// triangle. Each disk meets the triangle in a circular sector spanning the
/// base angle, so the density is `2 beta w(rho) / area` with `w` the sector
/// area per radian.
pub fn two_disk_density(geometry: Geometry, x: f64, y: f64, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain {
            what: "rho",
            value: rho,
        });
    }
    if y < 2.0 * rho - 1e-12 {
        return Err(Error::Domain {
            what: "base y (needs y >= 2 rho)",
            value: y,
        });
    }
    if !(2.0 * x > y) {
        return Err(Error::DegenerateTriangle);
    }
    let (base_angle, area) = match geometry {
        Geometry::Euclidean => {
            let beta = ((0.5 * y) / x).clamp(-1.0, 1.0).acos();
            let h = (x * x - 0.25 * y * y).sqrt();
            (beta, 0.5 * y * h)
        }
        Geometry::Spherical => {
            if !(y < PI && x < PI / 2.0) {
                return Err(Error::Domain {
                    what: "spherical legs/base",
                    value: x,
                });
            }
            let beta = geom::angle_from_sides(Geometry::Spherical, x, x, y);
            let apex = geom::angle_from_sides(Geometry::Spherical, y, x, x);
            (beta, apex + 2.0 * beta - PI)
        }
        Geometry::Hyperbolic => {
            let beta = geom::angle_from_sides(Geometry::Hyperbolic, x, x, y);
            let apex = geom::angle_from_sides(Geometry::Hyperbolic, y, x, x);
            (beta, PI - apex - 2.0 * beta)
        }
    };
    if area <= 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    Ok(2.0 * base_angle * geometry.sector_weight(rho) / area)
}
