//! Shared helpers for the integration suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use separable::geom::{self, Geometry, Point};

/// Greedy maximal packing of a metric disk around the origin: sampling
/// until saturation makes every region point lie within `2 rho` of a
/// center, which is stronger than the `2 R_rho` saturation the
/// decomposition needs.
pub fn random_saturated_centers(
    geometry: Geometry,
    rho: f64,
    region_radius: f64,
    seed: u64,
) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = Point::origin(geometry);
    let mut pts: Vec<Point> = Vec::new();
    let mut misses = 0;
    while misses < 3000 {
        let p = match geometry {
            Geometry::Euclidean => Point::euclidean(
                rng.gen_range(-region_radius..region_radius),
                rng.gen_range(-region_radius..region_radius),
            ),
            Geometry::Hyperbolic => {
                let r = 2.0 * region_radius.sinh();
                Point::hyperbolic_from_xy(rng.gen_range(-r..r), rng.gen_range(-r..r))
            }
            Geometry::Spherical => {
                let v = [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0f64),
                ];
                match Point::spherical_normalized(v) {
                    Ok(p) => p,
                    Err(_) => continue,
                }
            }
        };
        if geometry != Geometry::Spherical
            && geom::distance(&p, &origin).unwrap() > region_radius
        {
            continue;
        }
        if pts
            .iter()
            .all(|q| geom::distance(&p, q).unwrap() >= 2.0 * rho)
        {
            pts.push(p);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    pts
}

// Shared across test binaries; not every binary uses every helper.
#[allow(dead_code)]
pub fn octahedron() -> Vec<Point> {
    let mut pts = Vec::new();
    for s in [1.0, -1.0] {
        pts.push(Point::spherical([s, 0.0, 0.0]).unwrap());
        pts.push(Point::spherical([0.0, s, 0.0]).unwrap());
        pts.push(Point::spherical([0.0, 0.0, s]).unwrap());
    }
    pts
}
