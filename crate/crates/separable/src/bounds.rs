//! Piecewise density, tightness, and contact-number bounds for separable
//! packings of congruent disks.
//!
//! Density bounds are upper bounds on the fraction of the plane (or of a
//! decomposition cell) covered; tightness bounds are lower bounds on the
//! covering radius. Each result names the regime that fired and the
//! extremal triangle witnessing the bound, so callers can reproduce the
//! value from the triangle itself.

use crate::formulas::{self, Branch, SeparabilityParams, Variant};
use crate::geom::Geometry;
use crate::triangles::{self, IsoTriangle};
use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

/// Which piecewise case produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Regular triangle of edge `2 rho`.
    Regular,
    /// Family triangle whose half-leg equals `rho` (legs tangent pairs).
    FamilyAtLeg,
    /// Spherical family-two triangle with half-base `rho`.
    FamilyTwoAtBase,
    /// Family triangle at the circumradius minimizer.
    FamilyAtRadiusMin,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Regular => "regular",
            Regime::FamilyAtLeg => "family-at-leg",
            Regime::FamilyTwoAtBase => "family-two-at-base",
            Regime::FamilyAtRadiusMin => "family-at-radius-min",
        }
    }
}

/// A piecewise bound value with its regime and extremal witness.
#[derive(Clone, Debug)]
pub struct BoundResult {
    pub value: f64,
    pub regime: Regime,
    pub extremal: Option<IsoTriangle>,
    /// Whether equality is attained unconditionally (Euclidean theorems);
    /// in the curved planes equality needs a matching triangle tiling and
    /// the flag stays false.
    pub sharp: bool,
}

/// Density of the three vertex disks of radius `rho` inside a triangle with
/// the given angle sum and area: each vertex disk meets the triangle in a
/// sector, so the covered fraction is `w(rho) * angle_sum / area`.
pub fn cap_density(geometry: Geometry, rho: f64, angle_sum: f64, area: f64) -> f64 {
    geometry.sector_weight(rho) * angle_sum / area
}

fn triangle_density(t: &IsoTriangle, rho: f64) -> Result<f64> {
    Ok(cap_density(t.geometry, rho, t.angle_sum()?, t.area()?))
}

fn check_unit_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain {
            what: "lambda for unit disks",
            value: lambda,
        });
    }
    Ok(())
}

/// Largest density of a lambda-separable packing of unit disks in the
/// Euclidean plane: `pi / sqrt(12)` up to `lambda = sqrt(3)/2`, then
/// `pi / (4 lambda)`.
pub fn density_bound_euclidean(lambda: f64) -> Result<BoundResult> {
    check_unit_lambda(lambda)?;
    if lambda <= 3f64.sqrt() / 2.0 {
        Ok(BoundResult {
            value: PI / 12f64.sqrt(),
            regime: Regime::Regular,
            extremal: Some(triangles::regular_triangle(Geometry::Euclidean, 1.0)?),
            sharp: true,
        })
    } else {
        let y = (2.0 - 2.0 * (1.0 - lambda * lambda).sqrt()).sqrt();
        let t = triangles::family_triangle(Geometry::Euclidean, None, y, lambda)?;
        Ok(BoundResult {
            value: PI / (4.0 * lambda),
            regime: Regime::FamilyAtLeg,
            extremal: Some(t),
            sharp: true,
        })
    }
}

/// Smallest covering radius of a lambda-separable packing of unit disks in
/// the Euclidean plane (three branches, continuous at `sqrt(3)/2` and
/// `2 sqrt(2) / 3`).
pub fn tightness_bound_euclidean(lambda: f64) -> Result<BoundResult> {
    check_unit_lambda(lambda)?;
    let s3 = 3f64.sqrt();
    if lambda <= s3 / 2.0 {
        Ok(BoundResult {
            value: 2.0 / s3,
            regime: Regime::Regular,
            extremal: Some(triangles::regular_triangle(Geometry::Euclidean, 1.0)?),
            sharp: true,
        })
    } else if lambda <= 2.0 * 2f64.sqrt() / 3.0 {
        let y = (2.0 - 2.0 * (1.0 - lambda * lambda).sqrt()).sqrt();
        let t = triangles::family_triangle(Geometry::Euclidean, None, y, lambda)?;
        Ok(BoundResult {
            value: y / lambda,
            regime: Regime::FamilyAtLeg,
            extremal: Some(t),
            sharp: true,
        })
    } else {
        let y = (1.5f64).sqrt() * lambda;
        let t = triangles::family_triangle(Geometry::Euclidean, None, y, lambda)?;
        Ok(BoundResult {
            value: 3.0 * s3 * lambda / 4.0,
            regime: Regime::FamilyAtRadiusMin,
            extremal: Some(t),
            sharp: true,
        })
    }
}

/// Upper part of a contact-number bound.
#[derive(Clone, Copy, Debug)]
pub enum ContactUpper {
    /// Sharp exact value.
    Exact(i64),
    /// `2n - sqrt(pi lambda) sqrt(n) + C` with the additive constant `C`
    /// unresolved; `leading_value` evaluates the two explicit terms only
    /// and must not be read as a hard cap.
    TwoTermWithUnresolvedConstant { leading_value: f64 },
}

/// Contact-number bounds for lambda-separable packings of `n > 1` unit disks.
#[derive(Clone, Copy, Debug)]
pub struct ContactBounds {
    pub lower: i64,
    pub upper: ContactUpper,
    pub sharp: bool,
}

/// Largest number of touching pairs in a lambda-separable packing of `n`
/// unit disks: exactly `floor(3n - sqrt(12n - 3))` for
/// `lambda <= sqrt(3)/2`; for larger lambda the count is between
/// `floor(2n - 2 sqrt(n))` and `2n - sqrt(pi lambda) sqrt(n) + O(1)`.
pub fn contact_bounds(n: u64, lambda: f64) -> Result<ContactBounds> {
    if n < 2 {
        return Err(Error::Domain {
            what: "disk count n",
            value: n as f64,
        });
    }
    check_unit_lambda(lambda)?;
    let nf = n as f64;
    if lambda <= 3f64.sqrt() / 2.0 {
        let exact = (3.0 * nf - (12.0 * nf - 3.0).sqrt()).floor() as i64;
        Ok(ContactBounds {
            lower: exact,
            upper: ContactUpper::Exact(exact),
            sharp: true,
        })
    } else {
        Ok(ContactBounds {
            lower: (2.0 * nf - 2.0 * nf.sqrt()).floor() as i64,
            upper: ContactUpper::TwoTermWithUnresolvedConstant {
                leading_value: 2.0 * nf - (PI * lambda).sqrt() * nf.sqrt(),
            },
            sharp: false,
        })
    }
}

/// Whether the regular-triangle regime applies on the sphere: defined only
/// while the fixed-point thresholds exist (`lambda <= asin(3/5)`).
fn spherical_regular_window(lambda: f64) -> Result<Option<(f64, f64)>> {
    if lambda.sin() > 3.0 / 5.0 {
        return Ok(None);
    }
    Ok(Some((
        formulas::y_regular_min(Geometry::Spherical, lambda)?,
        formulas::y_regular_max(lambda)?,
    )))
}

enum SphRegime {
    FamilyOne,
    Regular,
    FamilyTwo,
}

/// Case analysis shared by the spherical density and tightness bounds.
fn spherical_regime(lambda: f64, rho: f64) -> Result<SphRegime> {
    let window = spherical_regular_window(lambda)?;
    if rho <= FRAC_PI_4 {
        match window {
            Some((ys, _)) if ys < rho => Ok(SphRegime::Regular),
            _ => Ok(SphRegime::FamilyOne),
        }
    } else {
        match window {
            Some((ys, yb)) if ys < rho && rho <= yb => Ok(SphRegime::Regular),
            _ => {
                if rho < formulas::spherical_domain_low(lambda) {
                    // The family-two value at half-base rho is undefined
                    // here (its arcsin argument exceeds 1); the piecewise
                    // statement leaves this sliver of large lambda open.
                    return Err(Error::Domain {
                        what: "family-two regime needs rho >= asin(tan lambda)",
                        value: rho,
                    });
                }
                Ok(SphRegime::FamilyTwo)
            }
        }
    }
}

/// Largest density of a lambda-separable packing of spherical caps of
/// radius `rho`. Values are capped at 1 (a density bound above 1 is
/// vacuously true; the raw family-two limit can exceed it for large caps).
pub fn density_bound_spherical(lambda: f64, rho: f64) -> Result<BoundResult> {
    let p = SeparabilityParams::new(Geometry::Spherical, lambda, rho)?;
    let regime = spherical_regime(p.lambda, p.rho)?;
    let (t, regime) = match regime {
        SphRegime::FamilyOne => {
            let y = formulas::half_leg_inverse(Variant::One, Branch::SphLow, rho, lambda)?;
            (
                triangles::family_triangle(Geometry::Spherical, Some(Variant::One), y, lambda)?,
                Regime::FamilyAtLeg,
            )
        }
        SphRegime::Regular => (
            triangles::regular_triangle(Geometry::Spherical, rho)?,
            Regime::Regular,
        ),
        SphRegime::FamilyTwo => {
            if lambda <= 1e-15 {
                // Family-two degenerates as lambda -> 0: its area tends to
                // 2 pi, leaving the limit value 3 (1 - cos rho) / 2.
                return Ok(BoundResult {
                    value: (1.5 * (1.0 - rho.cos())).min(1.0),
                    regime: Regime::FamilyTwoAtBase,
                    extremal: None,
                    sharp: false,
                });
            }
            (
                triangles::family_triangle(Geometry::Spherical, Some(Variant::Two), rho, lambda)?,
                Regime::FamilyTwoAtBase,
            )
        }
    };
    Ok(BoundResult {
        value: triangle_density(&t, rho)?.min(1.0),
        regime,
        extremal: Some(t),
        sharp: false,
    })
}

/// Smallest covering radius of a lambda-separable packing of spherical caps
/// of radius `rho` (four branches).
pub fn tightness_bound_spherical(lambda: f64, rho: f64) -> Result<BoundResult> {
    let p = SeparabilityParams::new(Geometry::Spherical, lambda, rho)?;
    let regime = spherical_regime(p.lambda, p.rho)?;
    let (t, regime) = match regime {
        SphRegime::FamilyOne => {
            // Split at rho = x1(y_min): at or below, the minimizing triangle
            // itself is admissible; above, legs must stretch to 2 rho.
            let at_min = if lambda > 0.0 {
                let ym = formulas::y_min_radius(Geometry::Spherical, lambda)?;
                let x_at_min = formulas::half_leg_sph_one(ym, lambda)?;
                if rho <= x_at_min {
                    Some(ym)
                } else {
                    None
                }
            } else {
                None
            };
            match at_min {
                Some(ym) => (
                    triangles::family_triangle(
                        Geometry::Spherical,
                        Some(Variant::One),
                        ym,
                        lambda,
                    )?,
                    Regime::FamilyAtRadiusMin,
                ),
                None => {
                    let y =
                        formulas::half_leg_inverse(Variant::One, Branch::SphLow, rho, lambda)?;
                    (
                        triangles::family_triangle(
                            Geometry::Spherical,
                            Some(Variant::One),
                            y,
                            lambda,
                        )?,
                        Regime::FamilyAtLeg,
                    )
                }
            }
        }
        SphRegime::Regular => (
            triangles::regular_triangle(Geometry::Spherical, rho)?,
            Regime::Regular,
        ),
        SphRegime::FamilyTwo => {
            if lambda <= 1e-15 {
                // Limit of the family-two circumradius as lambda -> 0.
                return Ok(BoundResult {
                    value: std::f64::consts::FRAC_PI_2,
                    regime: Regime::FamilyTwoAtBase,
                    extremal: None,
                    sharp: false,
                });
            }
            (
                triangles::family_triangle(Geometry::Spherical, Some(Variant::Two), rho, lambda)?,
                Regime::FamilyTwoAtBase,
            )
        }
    };
    Ok(BoundResult {
        value: t.circumradius()?,
        regime,
        extremal: Some(t),
        sharp: false,
    })
}

/// Largest per-cell density of a lambda-separable packing of hyperbolic
/// disks of radius `rho` over the cells of the refined decomposition.
pub fn density_bound_hyperbolic(lambda: f64, rho: f64) -> Result<BoundResult> {
    let p = SeparabilityParams::new(Geometry::Hyperbolic, lambda, rho)?;
    let ys = if lambda > 0.0 {
        formulas::y_regular_min(Geometry::Hyperbolic, p.lambda)?
    } else {
        0.0
    };
    let (t, regime) = if lambda > 0.0 && rho <= ys {
        let y = formulas::half_leg_inverse(Variant::One, Branch::HypLow, rho, lambda)?;
        (
            triangles::family_triangle(Geometry::Hyperbolic, None, y, lambda)?,
            Regime::FamilyAtLeg,
        )
    } else {
        (
            triangles::regular_triangle(Geometry::Hyperbolic, rho)?,
            Regime::Regular,
        )
    };
    Ok(BoundResult {
        value: triangle_density(&t, rho)?,
        regime,
        extremal: Some(t),
        sharp: false,
    })
}

/// Smallest covering radius of a lambda-separable packing of hyperbolic
/// disks of radius `rho` (three branches).
pub fn tightness_bound_hyperbolic(lambda: f64, rho: f64) -> Result<BoundResult> {
    let p = SeparabilityParams::new(Geometry::Hyperbolic, lambda, rho)?;
    let ys = if lambda > 0.0 {
        formulas::y_regular_min(Geometry::Hyperbolic, p.lambda)?
    } else {
        0.0
    };
    let (t, regime) = if lambda > 0.0 {
        let ym = formulas::y_min_radius(Geometry::Hyperbolic, lambda)?;
        let x_at_min = formulas::half_leg_hyp(ym, lambda)?;
        if rho <= x_at_min {
            (
                triangles::family_triangle(Geometry::Hyperbolic, None, ym, lambda)?,
                Regime::FamilyAtRadiusMin,
            )
        } else if rho <= ys {
            let y = formulas::half_leg_inverse(Variant::One, Branch::HypLow, rho, lambda)?;
            (
                triangles::family_triangle(Geometry::Hyperbolic, None, y, lambda)?,
                Regime::FamilyAtLeg,
            )
        } else {
            (
                triangles::regular_triangle(Geometry::Hyperbolic, rho)?,
                Regime::Regular,
            )
        }
    } else {
        (
            triangles::regular_triangle(Geometry::Hyperbolic, rho)?,
            Regime::Regular,
        )
    };
    Ok(BoundResult {
        value: t.circumradius()?,
        regime,
        extremal: Some(t),
        sharp: false,
    })
}

/// Density bound dispatcher. Euclidean disks of radius other than 1 reduce
/// to the unit-disk theorem by scaling.
pub fn density_bound(geometry: Geometry, lambda: f64, rho: f64) -> Result<BoundResult> {
    match geometry {
        Geometry::Euclidean => density_bound_euclidean(lambda / rho),
        Geometry::Spherical => density_bound_spherical(lambda, rho),
        Geometry::Hyperbolic => density_bound_hyperbolic(lambda, rho),
    }
}

/// Tightness bound dispatcher. Euclidean values scale linearly in `rho`.
pub fn tightness_bound(geometry: Geometry, lambda: f64, rho: f64) -> Result<BoundResult> {
    match geometry {
        Geometry::Euclidean => {
            let mut r = tightness_bound_euclidean(lambda / rho)?;
            r.value *= rho;
            Ok(r)
        }
        Geometry::Spherical => tightness_bound_spherical(lambda, rho),
        Geometry::Hyperbolic => tightness_bound_hyperbolic(lambda, rho),
    }
}
