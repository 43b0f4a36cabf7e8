//! Closed-form scalar functions behind the extremal triangle families.
//!
//! For a separation radius `lambda`, the isosceles triangles whose three
//! vertex disks of radius `lambda` are touched by the two midlines (the
//! lines through the midpoints of a leg and the base) form one-parameter
//! families indexed by the half-base `y`. The functions here give the
//! half-leg of those triangles, the half-base values at which the family
//! triangle degenerates to a regular one, the half-base minimizing the
//! circumradius, and the saturation radius used by the refined cell
//! decomposition.

use crate::geom::Geometry;
use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Which spherical family: `One` has half-leg at most pi/4, `Two` is its
/// supplement with half-leg `pi/2 - x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    One,
    Two,
}

/// Monotone branch of the half-leg function, named by the half-base range.
///
/// Spherical: `SphLow = [asin(tan lambda), asin(sqrt(2) sin lambda)]` where
/// the family-one half-leg decreases from pi/4 to lambda, `SphHigh` the
/// complementary interval up to pi/2 where it increases back to pi/4.
/// Hyperbolic: `HypLow = (lambda, asinh(sqrt(2) sinh lambda)]` (decreasing
/// from infinity to lambda), `HypHigh` the unbounded increasing branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    SphLow,
    SphHigh,
    HypLow,
    HypHigh,
}

/// Validated `(lambda, rho)` pair for one geometry.
#[derive(Clone, Copy, Debug)]
pub struct SeparabilityParams {
    pub geometry: Geometry,
    pub lambda: f64,
    pub rho: f64,
}

impl SeparabilityParams {
    pub fn new(geometry: Geometry, lambda: f64, rho: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::Domain {
                what: "rho",
                value: rho,
            });
        }
        if !(0.0..=rho).contains(&lambda) {
            return Err(Error::Domain {
                what: "lambda",
                value: lambda,
            });
        }
        if geometry == Geometry::Spherical && (rho >= FRAC_PI_2 || lambda > FRAC_PI_2 - rho) {
            return Err(Error::Domain {
                what: "spherical rho (needs rho < pi/2, lambda <= pi/2 - rho)",
                value: rho,
            });
        }
        Ok(SeparabilityParams {
            geometry,
            lambda,
            rho,
        })
    }
}

/// Lower endpoint of the spherical half-base domain, `asin(tan lambda)`.
pub fn spherical_domain_low(lambda: f64) -> f64 {
    lambda.tan().asin()
}

/// Half-base at which both spherical branches meet, `asin(sqrt(2) sin lambda)`.
pub fn spherical_branch_point(lambda: f64) -> f64 {
    (2f64.sqrt() * lambda.sin()).min(1.0).asin()
}

/// Half-base at which both hyperbolic branches meet, `asinh(sqrt(2) sinh lambda)`.
pub fn hyperbolic_branch_point(lambda: f64) -> f64 {
    (2f64.sqrt() * lambda.sinh()).asinh()
}

fn check_spherical_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < FRAC_PI_4) {
        return Err(Error::Domain {
            what: "spherical lambda (needs 0 < lambda < pi/4)",
            value: lambda,
        });
    }
    Ok(())
}

/// Half-leg of the spherical family-one triangle with half-base `y`.
///
/// Requires `0 < lambda < pi/4` and `asin(tan lambda) <= y <= pi/2`.
pub fn half_leg_sph_one(y: f64, lambda: f64) -> Result<f64> {
    check_spherical_lambda(lambda)?;
    let lo = spherical_domain_low(lambda);
    if !(y >= lo - 1e-12 && y <= FRAC_PI_2 + 1e-12) {
        return Err(Error::Domain {
            what: "spherical half-base y",
            value: y,
        });
    }
    let sy = y.sin();
    let sl = lambda.sin();
    let denom = (sy * sy - sl * sl).max(0.0).sqrt();
    if denom == 0.0 {
        // Closed-limit evaluation at y = asin(tan lambda): the ratio is 1.
        return Ok(FRAC_PI_4);
    }
    let ratio = (lambda.cos() * sy * sy / denom).clamp(-1.0, 1.0);
    Ok(0.5 * ratio.asin())
}

/// Half-leg of the spherical family-two triangle: `pi/2 - ` family one.
pub fn half_leg_sph_two(y: f64, lambda: f64) -> Result<f64> {
    Ok(FRAC_PI_2 - half_leg_sph_one(y, lambda)?)
}

/// Half-leg of the hyperbolic family triangle with half-base `y > lambda`.
pub fn half_leg_hyp(y: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            what: "hyperbolic lambda",
            value: lambda,
        });
    }
    if !(y > lambda) {
        return Err(Error::Domain {
            what: "hyperbolic half-base y (needs y > lambda)",
            value: y,
        });
    }
    let sy = y.sinh();
    let sl = lambda.sinh();
    let denom = (sy * sy - sl * sl).sqrt();
    Ok(0.5 * (lambda.cosh() * sy * sy / denom).asinh())
}

/// Half-leg of the Euclidean family triangle, `y^2 / (2 sqrt(y^2 - lambda^2))`.
pub fn half_leg_euc(y: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            what: "euclidean lambda",
            value: lambda,
        });
    }
    if !(y > lambda) {
        return Err(Error::Domain {
            what: "euclidean half-base y (needs y > lambda)",
            value: y,
        });
    }
    Ok(y * y / (2.0 * (y * y - lambda * lambda).sqrt()))
}

/// Unified half-leg dispatcher. `variant` is required for the sphere and
/// ignored elsewhere.
pub fn half_leg(
    geometry: Geometry,
    variant: Option<Variant>,
    y: f64,
    lambda: f64,
) -> Result<f64> {
    match geometry {
        Geometry::Spherical => match variant {
            Some(Variant::One) => half_leg_sph_one(y, lambda),
            Some(Variant::Two) => half_leg_sph_two(y, lambda),
            None => Err(Error::Domain {
                what: "spherical family needs a variant",
                value: y,
            }),
        },
        Geometry::Hyperbolic => half_leg_hyp(y, lambda),
        Geometry::Euclidean => half_leg_euc(y, lambda),
    }
}

impl Branch {
    pub fn geometry(self) -> Geometry {
        match self {
            Branch::SphLow | Branch::SphHigh => Geometry::Spherical,
            Branch::HypLow | Branch::HypHigh => Geometry::Hyperbolic,
        }
    }

    /// Closed interval of half-base values covered by the branch. Hyperbolic
    /// branches have an open or unbounded end which the inverse handles by
    /// bracketing.
    fn interval(self, lambda: f64) -> (f64, f64) {
        match self {
            Branch::SphLow => (spherical_domain_low(lambda), spherical_branch_point(lambda)),
            Branch::SphHigh => (spherical_branch_point(lambda), FRAC_PI_2),
            Branch::HypLow => (lambda, hyperbolic_branch_point(lambda)),
            Branch::HypHigh => (hyperbolic_branch_point(lambda), f64::INFINITY),
        }
    }

    fn decreasing(self, variant: Variant) -> bool {
        // Family one decreases on the low branches; family two is its
        // reflection in pi/2, so the senses flip.
        let one_decreasing = matches!(self, Branch::SphLow | Branch::HypLow);
        match variant {
            Variant::One => one_decreasing,
            Variant::Two => !one_decreasing,
        }
    }
}

/// Inverse of the half-leg function restricted to a monotone branch:
/// returns the half-base `y` on the branch with half-leg equal to `rho`.
/// Computed by bisection down to an interval of width 1e-12.
pub fn half_leg_inverse(variant: Variant, branch: Branch, rho: f64, lambda: f64) -> Result<f64> {
    let geometry = branch.geometry();
    if geometry == Geometry::Hyperbolic && variant == Variant::Two {
        return Err(Error::Domain {
            what: "hyperbolic family has a single variant",
            value: rho,
        });
    }
    let f = |y: f64| half_leg(geometry, Some(variant), y, lambda);
    let (mut lo, mut hi) = branch.interval(lambda);
    let decreasing = branch.decreasing(variant);

    // Bracket the target on branches with an open or unbounded end.
    match branch {
        Branch::HypLow => {
            // f(lo+) -> infinity; walk toward lambda until rho is covered.
            let mut step = (hi - lo).max(1e-6);
            let mut probe = hi;
            let mut guard = 0;
            while f(probe)? < rho {
                step *= 0.5;
                probe = lo + step;
                guard += 1;
                if guard > 2000 {
                    return Err(Error::NotOnBranch { value: rho });
                }
            }
            lo = probe;
        }
        Branch::HypHigh => {
            let mut probe = (2.0 * lo).max(lo + 1.0);
            let mut guard = 0;
            while f(probe)? < rho {
                probe *= 2.0;
                guard += 1;
                if guard > 200 {
                    return Err(Error::NotOnBranch { value: rho });
                }
            }
            hi = probe;
        }
        _ => {}
    }

    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    let (min_v, max_v) = if f_lo <= f_hi { (f_lo, f_hi) } else { (f_hi, f_lo) };
    // The half-leg has square-root behavior at the closed branch ends, so the
    // evaluated range can fall short of the exact one by ~sqrt(eps).
    if rho < min_v - 1e-7 || rho > max_v + 1e-7 {
        return Err(Error::NotOnBranch { value: rho });
    }

    // Bisect past the 1e-12 interval target all the way to fp exhaustion:
    // where the branch is steep the extra iterations buy back the value
    // accuracy of the round trip.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid)?;
        let go_right = if decreasing { v > rho } else { v < rho };
        if go_right {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smallest half-base at which the family triangle is regular (half-leg
/// equals half-base). Defined for the sphere on `0 < lambda <= asin(3/5)`
/// and for the hyperbolic plane for all `lambda > 0`; the value is 0 at
/// `lambda = 0` in both geometries.
pub fn y_regular_min(geometry: Geometry, lambda: f64) -> Result<f64> {
    match geometry {
        Geometry::Spherical => {
            let l2 = lambda.sin().powi(2);
            let disc = 9.0 - 34.0 * l2 + 25.0 * l2 * l2;
            if lambda < 0.0 || disc < -1e-12 {
                return Err(Error::Domain {
                    what: "spherical lambda (needs lambda <= asin(3/5))",
                    value: lambda,
                });
            }
            let s = ((3.0 + 5.0 * l2 - disc.max(0.0).sqrt()) / 8.0).max(0.0);
            Ok(s.sqrt().min(1.0).asin())
        }
        Geometry::Hyperbolic => {
            if lambda < 0.0 {
                return Err(Error::Domain {
                    what: "hyperbolic lambda",
                    value: lambda,
                });
            }
            let l2 = lambda.sinh().powi(2);
            let disc = 25.0 * l2 * l2 + 34.0 * l2 + 9.0;
            let s = ((5.0 * l2 - 3.0 + disc.sqrt()) / 8.0).max(0.0);
            Ok(s.sqrt().asinh())
        }
        Geometry::Euclidean => Err(Error::Domain {
            what: "y_regular_min geometry",
            value: 0.0,
        }),
    }
}

/// Largest half-base at which the spherical family triangle is regular.
/// Requires `0 <= lambda <= asin(3/5)`.
pub fn y_regular_max(lambda: f64) -> Result<f64> {
    let l2 = lambda.sin().powi(2);
    let disc = 9.0 - 34.0 * l2 + 25.0 * l2 * l2;
    if lambda < 0.0 || disc < -1e-12 {
        return Err(Error::Domain {
            what: "spherical lambda (needs lambda <= asin(3/5))",
            value: lambda,
        });
    }
    let s = ((3.0 + 5.0 * l2 + disc.max(0.0).sqrt()) / 8.0).clamp(0.0, 1.0);
    Ok(s.sqrt().asin())
}

/// Real root of the depressed cubic `z^3 + p z + q = 0` when the cubic has
/// exactly one real root (4 p^3 + 27 q^2 >= 0), evaluated without
/// cancellation in the Cardano radicals.
fn cardano_single_real_root(p: f64, q: f64) -> f64 {
    let disc = 0.25 * q * q + p * p * p / 27.0;
    let s = disc.max(0.0).sqrt();
    if q <= 0.0 {
        let u3 = -0.5 * q + s;
        let u = u3.cbrt();
        let v3 = if u3 != 0.0 { -p * p * p / (27.0 * u3) } else { 0.0 };
        u + v3.cbrt()
    } else {
        let v3 = -0.5 * q - s;
        let v = v3.cbrt();
        let u3 = if v3 != 0.0 { -p * p * p / (27.0 * v3) } else { 0.0 };
        u3.cbrt() + v
    }
}

/// Half-base minimizing the circumradius over the family.
///
/// Spherical: the unique real root of
/// `z^3 + (2 L^2 - 10 L^4 / 3) z + L^4 / 3 - 25 L^6 / 27 = 0` with
/// `z = sin^2 y - 5 L^2 / 3`, `L = sin lambda`. Hyperbolic: the middle
/// trigonometric root of the analogous three-real-root cubic.
pub fn y_min_radius(geometry: Geometry, lambda: f64) -> Result<f64> {
    match geometry {
        Geometry::Spherical => {
            if !(lambda > 0.0 && lambda < FRAC_PI_2) {
                return Err(Error::Domain {
                    what: "spherical lambda",
                    value: lambda,
                });
            }
            let l = lambda.sin();
            let l2 = l * l;
            let p = 2.0 * l2 - 10.0 * l2 * l2 / 3.0;
            let q = l2 * l2 / 3.0 - 25.0 * l2 * l2 * l2 / 27.0;
            let z = cardano_single_real_root(p, q);
            let y2 = z + 5.0 * l2 / 3.0;
            if !(y2 > 0.0) {
                return Err(Error::Domain {
                    what: "spherical y_min",
                    value: y2,
                });
            }
            // For lambda >= pi/4 the root of the cubic exceeds sin^2 y = 1;
            // the circumradius is then decreasing on the whole half-base
            // domain and the minimizer saturates at pi/2.
            Ok(y2.min(1.0).sqrt().asin())
        }
        Geometry::Hyperbolic => {
            if !(lambda > 0.0) {
                return Err(Error::Domain {
                    what: "hyperbolic lambda",
                    value: lambda,
                });
            }
            let l = lambda.sinh();
            let l2 = l * l;
            let amp = (10.0 * l2 * l2 + 6.0 * l2).sqrt();
            let arg = ((25.0 * l2 + 9.0) * l / (4.0 * 2f64.sqrt() * (5.0 * l2 + 3.0).powf(1.5)))
                .clamp(-1.0, 1.0);
            let y2 = 5.0 * l2 / 3.0
                + 2.0 / 3.0
                    * amp
                    * ((arg.acos() / 3.0) - 2.0 * std::f64::consts::PI / 3.0).cos();
            if !(y2 > 0.0) {
                return Err(Error::Domain {
                    what: "hyperbolic y_min",
                    value: y2,
                });
            }
            Ok(y2.sqrt().asinh())
        }
        Geometry::Euclidean => Err(Error::Domain {
            what: "y_min_radius geometry",
            value: 0.0,
        }),
    }
}

/// Direct evaluation of the printed closed form for the spherical
/// circumradius minimizer. Exposed so the equivalence with the cubic-root
/// implementation can be checked; the radicand factors as
/// `3 L^6 (1 - L^2)(125 L^4 - 125 L^2 + 32)` and is nonnegative on the whole
/// domain, so the expression is real-valued everywhere.
pub fn y_min_radius_sph_printed_form(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < FRAC_PI_2) {
        return Err(Error::Domain {
            what: "spherical lambda",
            value: lambda,
        });
    }
    let l = lambda.sin();
    let (l4, l6) = (l.powi(4), l.powi(6));
    let radicand = -375.0 * l.powi(12) + 750.0 * l.powi(10) - 471.0 * l.powi(8) + 96.0 * l6;
    let a = 100.0 * l6 - 36.0 * l4 + 12.0 * radicand.max(0.0).sqrt();
    let a13 = a.cbrt();
    let inner = 6.0 * a13 - 216.0 * (-10.0 / 9.0 * l4 + 2.0 / 3.0 * l * l) / a13 + 60.0 * l * l;
    let s = inner.max(0.0).sqrt() / 6.0;
    Ok(s.clamp(0.0, 1.0).asin())
}

/// Saturation radius: circumradius of the regular quadrangle of edge
/// `2 rho`. Undefined for spherical `rho > pi/4`.
pub fn saturation_radius(geometry: Geometry, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain {
            what: "rho",
            value: rho,
        });
    }
    match geometry {
        Geometry::Euclidean => Ok(2f64.sqrt() * rho),
        Geometry::Spherical => {
            if rho > FRAC_PI_4 + 1e-15 {
                return Err(Error::NoSaturationRadius);
            }
            Ok((2f64.sqrt() * rho.sin()).min(1.0).asin())
        }
        Geometry::Hyperbolic => Ok((2f64.sqrt() * rho.sinh()).asinh()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let flo = f(lo);
        for _ in 0..200 {
            if hi - lo < 1e-14 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (flo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn spherical_branch_endpoints() {
        for lambda in [0.1, 0.3, 0.6, 0.78] {
            let lo = spherical_domain_low(lambda);
            let x_lo = half_leg_sph_one(lo, lambda).unwrap();
            let x_hi = half_leg_sph_one(FRAC_PI_2, lambda).unwrap();
            // The arcsin has square-root conditioning at both pi/4 endpoints.
            assert!((x_lo - FRAC_PI_4).abs() < 1e-7, "lambda={lambda}");
            assert!((x_hi - FRAC_PI_4).abs() < 1e-7);
            let x_mid = half_leg_sph_one(spherical_branch_point(lambda), lambda).unwrap();
            assert!((x_mid - lambda).abs() < 1e-12);
        }
    }

    #[test]
    fn euclidean_and_hyperbolic_fixed_points() {
        let lambda = 0.4;
        let y = 2f64.sqrt() * lambda;
        assert!((half_leg_euc(y, lambda).unwrap() - lambda).abs() < 1e-14);
        let yh = hyperbolic_branch_point(lambda);
        assert!((half_leg_hyp(yh, lambda).unwrap() - lambda).abs() < 1e-13);
    }

    #[test]
    fn family_two_is_complement() {
        let lambda = 0.35;
        for i in 1..20 {
            let lo = spherical_domain_low(lambda);
            let y = lo + (FRAC_PI_2 - lo) * i as f64 / 20.0;
            let x1 = half_leg_sph_one(y, lambda).unwrap();
            let x2 = half_leg_sph_two(y, lambda).unwrap();
            assert!((x1 + x2 - FRAC_PI_2).abs() < 1e-15);
        }
    }

    #[test]
    fn tangency_identity_holds() {
        // sin(2x) * sqrt(cos^2 lambda - cos^2 y) = cos lambda * sin^2 y.
        for lambda in [0.12, 0.33, 0.61] {
            let lo = spherical_domain_low(lambda);
            for i in 1..40 {
                let y = lo + (FRAC_PI_2 - lo) * i as f64 / 40.0;
                let x = half_leg_sph_one(y, lambda).unwrap();
                let lhs = (2.0 * x).sin()
                    * (lambda.cos().powi(2) - y.cos().powi(2)).max(0.0).sqrt();
                let rhs = lambda.cos() * y.sin().powi(2);
                assert!((lhs - rhs).abs() < 1e-10, "lambda={lambda} y={y}");
            }
        }
    }

    #[test]
    fn branch_monotonicity_sampled() {
        // 1000 samples per branch; strict monotonicity.
        let lambda = 0.3;
        let check = |branch: Branch, decreasing: bool| {
            let (lo, hi) = branch.interval(lambda);
            let hi = if hi.is_infinite() { lo + 5.0 } else { hi };
            let lo = lo + 1e-6 * (hi - lo);
            let g = branch.geometry();
            let mut prev = None;
            for i in 0..=1000 {
                let y = lo + (hi - lo) * i as f64 / 1000.0;
                let x = half_leg(g, Some(Variant::One), y, lambda).unwrap();
                if let Some(p) = prev {
                    if decreasing {
                        assert!(x < p + 1e-12, "{branch:?} y={y}");
                    } else {
                        assert!(x > p - 1e-12, "{branch:?} y={y}");
                    }
                }
                prev = Some(x);
            }
        };
        check(Branch::SphLow, true);
        check(Branch::SphHigh, false);
        check(Branch::HypLow, true);
        check(Branch::HypHigh, false);
    }

    #[test]
    fn hyperbolic_half_leg_blows_up_at_ends() {
        let lambda = 0.5;
        assert!(half_leg_hyp(lambda + 1e-12, lambda).unwrap() > 6.0);
        assert!(half_leg_hyp(40.0, lambda).unwrap() > 15.0);
    }

    #[test]
    fn inverse_round_trips() {
        let lambda = 0.3;
        // Branch endpoint: the half-leg has a quadratic minimum there, so
        // the inverse is sqrt-conditioned in y; the value round-trips tightly.
        let y = half_leg_inverse(Variant::One, Branch::SphLow, lambda, lambda).unwrap();
        assert!((y - spherical_branch_point(lambda)).abs() < 1e-4);
        assert!((half_leg_sph_one(y, lambda).unwrap() - lambda).abs() < 1e-10);
        let y = half_leg_inverse(Variant::One, Branch::SphLow, FRAC_PI_4, lambda).unwrap();
        assert!((y - spherical_domain_low(lambda)).abs() < 1e-7);
        // Round trip on the hyperbolic low branch.
        for rho in [0.35, 0.5, 1.0, 2.0] {
            let y = half_leg_inverse(Variant::One, Branch::HypLow, rho, lambda).unwrap();
            assert!((half_leg_hyp(y, lambda).unwrap() - rho).abs() < 1e-10, "rho={rho}");
        }
        // And on the spherical high branch.
        for rho in [0.4, 0.6, 0.75] {
            let y = half_leg_inverse(Variant::One, Branch::SphHigh, rho, lambda).unwrap();
            assert!((half_leg_sph_one(y, lambda).unwrap() - rho).abs() < 1e-10);
        }
        assert!(half_leg_inverse(Variant::One, Branch::SphLow, 0.1, lambda).is_err());
    }

    #[test]
    fn regular_thresholds_limits() {
        // lambda -> 0: y_s -> 0 and y_b -> pi/3 on the sphere; y_s -> 0 in
        // the hyperbolic plane.
        assert!(y_regular_min(Geometry::Spherical, 1e-9).unwrap() < 1e-4);
        assert!((y_regular_max(0.0).unwrap() - PI / 3.0).abs() < 1e-12);
        assert!(y_regular_min(Geometry::Hyperbolic, 1e-9).unwrap() < 1e-4);
        // Discriminant vanishes at lambda = asin(3/5).
        let l = (3f64 / 5.0).asin();
        let ys = y_regular_min(Geometry::Spherical, l).unwrap();
        let yb = y_regular_max(l).unwrap();
        let expected = (3f64 / 5.0).sqrt().asin();
        assert!((ys - expected).abs() < 1e-7);
        assert!((yb - expected).abs() < 1e-7);
    }

    #[test]
    fn regular_thresholds_are_fixed_points() {
        for lambda in [0.05, 0.2, 0.4, 0.6] {
            let ys = y_regular_min(Geometry::Spherical, lambda).unwrap();
            let x = half_leg_sph_one(ys, lambda).unwrap();
            assert!((x - ys).abs() < 1e-9, "lambda={lambda}: x1(y_s) = y_s");
            let yb = y_regular_max(lambda).unwrap();
            let x2 = half_leg_sph_two(yb, lambda).unwrap();
            assert!((x2 - yb).abs() < 1e-9, "lambda={lambda}: x2(y_b) = y_b");
            let yh = y_regular_min(Geometry::Hyperbolic, lambda).unwrap();
            let xh = half_leg_hyp(yh, lambda).unwrap();
            assert!((xh - yh).abs() < 1e-9, "lambda={lambda}: xh(y_s) = y_s");
        }
    }

    #[test]
    fn regular_thresholds_match_bisection_roots() {
        // y_s and y_b are the roots of x(y) = y found independently by
        // bisection on the sign of x(y) - y.
        for lambda in [0.1, 0.25, 0.45, 0.6] {
            let lo = spherical_domain_low(lambda) + 1e-9;
            let ys = y_regular_min(Geometry::Spherical, lambda).unwrap();
            let root = bisect_root(
                |y| half_leg_sph_one(y, lambda).unwrap() - y,
                lo.max(ys - 0.3),
                ys + 1e-3,
            );
            assert!((root - ys).abs() < 1e-9, "lambda={lambda}");

            let yb = y_regular_max(lambda).unwrap();
            let root_b = bisect_root(
                |y| half_leg_sph_two(y, lambda).unwrap() - y,
                yb - 1e-3,
                (yb + 0.3).min(FRAC_PI_2 - 1e-9),
            );
            assert!((root_b - yb).abs() < 1e-9, "lambda={lambda}");

            let yh = y_regular_min(Geometry::Hyperbolic, lambda).unwrap();
            let root_h = bisect_root(
                |y| half_leg_hyp(y, lambda).unwrap() - y,
                (yh - 0.2).max(lambda * (1.0 + 1e-9) + 1e-12),
                yh + 1e-3,
            );
            assert!((root_h - yh).abs() < 1e-9, "lambda={lambda}");
        }
    }

    #[test]
    fn y_regular_monotonicity() {
        let mut prev_s = 0.0;
        let mut prev_b = f64::INFINITY;
        let top = (3f64 / 5.0).asin() - 1e-6;
        for i in 1..=200 {
            let lambda = top * i as f64 / 200.0;
            let ys = y_regular_min(Geometry::Spherical, lambda).unwrap();
            let yb = y_regular_max(lambda).unwrap();
            assert!(ys > prev_s, "y_s strictly increasing");
            assert!(yb < prev_b, "y_b strictly decreasing");
            prev_s = ys;
            prev_b = yb;
        }
    }

    #[test]
    fn printed_min_form_matches_cubic_root() {
        // Beyond lambda = pi/4 both forms saturate at pi/2, so compare on
        // the interval where the minimizer is interior.
        for i in 1..100 {
            let lambda = FRAC_PI_4 * i as f64 / 100.0;
            let direct = y_min_radius_sph_printed_form(lambda).unwrap();
            let cubic = y_min_radius(Geometry::Spherical, lambda).unwrap();
            // Compare on the sine level too: the arcsin amplifies rounding
            // when the minimizer approaches pi/2 (lambda near pi/4).
            assert!(
                (direct.sin() - cubic.sin()).abs() < 1e-11 && (direct - cubic).abs() < 1e-6,
                "lambda={lambda}: {direct} vs {cubic}"
            );
        }
    }

    #[test]
    fn y_min_bounded_by_branch_interval() {
        for i in 1..50 {
            let lambda = FRAC_PI_4 * i as f64 / 50.0;
            let ym = y_min_radius(Geometry::Spherical, lambda).unwrap();
            assert!(ym >= spherical_domain_low(lambda) - 1e-9);
            assert!(ym <= spherical_branch_point(lambda) + 1e-9);
        }
    }

    #[test]
    fn hyperbolic_ordering_chain() {
        // lambda < x(y_min) < y_s < y_min < asinh(sqrt2 sinh lambda).
        for i in 1..=40 {
            let lambda = 1.5 * i as f64 / 40.0;
            let ym = y_min_radius(Geometry::Hyperbolic, lambda).unwrap();
            let x_at_min = half_leg_hyp(ym, lambda).unwrap();
            let ys = y_regular_min(Geometry::Hyperbolic, lambda).unwrap();
            let bp = hyperbolic_branch_point(lambda);
            assert!(lambda < x_at_min, "lambda={lambda}");
            assert!(x_at_min < ys, "lambda={lambda}");
            assert!(ys < ym, "lambda={lambda}");
            assert!(ym < bp, "lambda={lambda}");
        }
    }

    #[test]
    fn flat_limit_of_half_legs() {
        let eps = 1e-3;
        let (y0, l0) = (0.9, 0.5);
        let xe = half_leg_euc(y0, l0).unwrap();
        let xs = half_leg_sph_one(eps * y0, eps * l0).unwrap() / eps;
        let xh = half_leg_hyp(eps * y0, eps * l0).unwrap() / eps;
        assert!((xs - xe).abs() / xe < 1e-4);
        assert!((xh - xe).abs() / xe < 1e-4);
    }

    #[test]
    fn saturation_radius_values() {
        assert!((saturation_radius(Geometry::Euclidean, 1.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(
            (saturation_radius(Geometry::Spherical, FRAC_PI_4).unwrap() - FRAC_PI_2).abs() < 1e-12
        );
        assert!(matches!(
            saturation_radius(Geometry::Spherical, 0.8),
            Err(Error::NoSaturationRadius)
        ));
        // R_rho / rho -> sqrt(2) as rho -> 0 in the hyperbolic plane.
        let rho = 1e-5;
        let ratio = saturation_radius(Geometry::Hyperbolic, rho).unwrap() / rho;
        assert!((ratio - 2f64.sqrt()).abs() < 1e-9);
    }
}
