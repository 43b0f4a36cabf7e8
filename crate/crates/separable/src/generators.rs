//! Constructors for the named extremal and witness configurations.

use crate::geom::{Geometry, Point};
use crate::packing::Packing;
use crate::{Error, Result};

/// Lattice window of unit disks achieving the Euclidean density bound: the
/// hexagonal lattice up to `lambda = sqrt(3)/2`, then the lattice whose
/// Delaunay triangles have legs of length 2 and a horizontal base longer
/// than 2 (tightening onto the square lattice at `lambda = 1`).
pub fn extremal_density_lattice(lambda: f64, window: usize) -> Result<Packing> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
        });
    }
    let (u, v) = if lambda <= 3f64.sqrt() / 2.0 {
        ([2.0, 0.0], [1.0, 3f64.sqrt()])
    } else {
        let y = (2.0 - 2.0 * (1.0 - lambda * lambda).sqrt()).sqrt();
        ([2.0 * y, 0.0], [y, (4.0 - y * y).sqrt()])
    };
    lattice_window(u, v, window, lambda)
}

/// Lattice window of unit disks achieving the Euclidean tightness bound in
/// each of the three regimes.
pub fn extremal_tightness_config(lambda: f64, window: usize) -> Result<Packing> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
        });
    }
    if lambda <= 2.0 * 2f64.sqrt() / 3.0 {
        return extremal_density_lattice(lambda, window);
    }
    // Apex-minimizer triangles: legs 3 lambda / sqrt(2), base sqrt(6) lambda.
    let base = 6f64.sqrt() * lambda;
    let height = 3f64.sqrt() * lambda;
    lattice_window([base, 0.0], [0.5 * base, height], window, lambda)
}

fn lattice_window(u: [f64; 2], v: [f64; 2], window: usize, lambda: f64) -> Result<Packing> {
    if window < 2 {
        return Err(Error::Domain {
            what: "window (needs >= 2 cells per axis)",
            value: window as f64,
        });
    }
    let w = window as i64;
    let mut centers = Vec::new();
    for i in -w..=w {
        for j in -w..=w {
            centers.push(Point::euclidean(
                i as f64 * u[0] + j as f64 * v[0],
                i as f64 * u[1] + j as f64 * v[1],
            ));
        }
    }
    Packing::new(Geometry::Euclidean, centers, 1.0, lambda)
}

/// `k x k` square grid of unit disks with spacing 2, separable up to
/// `lambda = 1`.
pub fn square_grid(k: usize) -> Result<Packing> {
    if k < 1 {
        return Err(Error::Domain {
            what: "grid size",
            value: k as f64,
        });
    }
    let mut centers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            centers.push(Point::euclidean(2.0 * i as f64, 2.0 * j as f64));
        }
    }
    Packing::new(Geometry::Euclidean, centers, 1.0, 1.0)
}

/// Hexagonal-lattice patch of `n` unit disks grown ring by ring (clockwise
/// within each ring) around the origin; complete rings reproduce the
/// extremal contact counts of the hexagonal numbers 7, 19, 37, ...
pub fn hexagonal_patch(n: usize) -> Result<Packing> {
    if n < 2 {
        return Err(Error::Domain {
            what: "patch size",
            value: n as f64,
        });
    }
    let mut centers = vec![Point::euclidean(0.0, 0.0)];
    let mut ring = 1i64;
    while centers.len() < n {
        // Walk the ring: start at (2r, 0), take 6 corner directions, r
        // steps each, clockwise.
        let mut pos = (2.0 * ring as f64, 0.0);
        let dirs = [
            (-1.0, -3f64.sqrt()),
            (-2.0, 0.0),
            (-1.0, 3f64.sqrt()),
            (1.0, 3f64.sqrt()),
            (2.0, 0.0),
            (1.0, -3f64.sqrt()),
        ];
        for d in dirs {
            for _ in 0..ring {
                if centers.len() >= n {
                    break;
                }
                centers.push(Point::euclidean(pos.0, pos.1));
                pos = (pos.0 + d.0, pos.1 + d.1);
            }
        }
        ring += 1;
    }
    centers.truncate(n);
    Packing::new(Geometry::Euclidean, centers, 1.0, 3f64.sqrt() / 2.0)
}

/// Cap packings centered at the vertices of the regular tetrahedron,
/// octahedron, or icosahedron, with the touching radius of each solid.
pub fn platonic_caps(n: usize) -> Result<Packing> {
    let (centers, rho): (Vec<[f64; 3]>, f64) = match n {
        4 => (
            vec![
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ],
            (2f64 / 3.0).sqrt().asin(),
        ),
        6 => (
            vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            std::f64::consts::FRAC_PI_4,
        ),
        12 => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let mut v = Vec::new();
            for (a, b) in [(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
                v.push([0.0, a, b]);
                v.push([a, b, 0.0]);
                v.push([b, 0.0, a]);
            }
            (v, (1.0 / (2.0 * (2.0 * std::f64::consts::PI / 5.0).sin())).asin())
        }
        _ => {
            return Err(Error::Domain {
                what: "platonic cap count (4, 6, or 12)",
                value: n as f64,
            })
        }
    };
    let centers = centers
        .into_iter()
        .map(Point::spherical_normalized)
        .collect::<Result<Vec<_>>>()?;
    Packing::new(Geometry::Spherical, centers, rho, 0.0)
}

/// The two sporadic isosceles tilings of the sphere whose triangles realize
/// both extremal bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedTiling {
    /// 16 congruent isosceles triangles.
    H16,
    /// 20 congruent isosceles triangles.
    H20,
}

/// Exact `(rho, lambda)` for the named tiling.
pub fn special_tiling_constants(t: NamedTiling) -> (f64, f64) {
    match t {
        NamedTiling::H16 => {
            let rho = 0.5 * (2.0 * 2f64.sqrt() - 2.0).sqrt().asin();
            let lambda = (2.0 * (std::f64::consts::PI / 8.0).sin() * (1.0 + 2f64.sqrt()).sqrt()
                / (4.0 + 2f64.sqrt()).sqrt())
            .asin();
            (rho, lambda)
        }
        NamedTiling::H20 => {
            let c5 = (std::f64::consts::PI / 5.0).cos();
            let rho = 0.5 * ((1.0 + 2.0 * c5).sqrt() / (1.0 + c5)).asin();
            let lambda = (2.0 / 5f64.sqrt()
                * (std::f64::consts::PI / 10.0).sin()
                * (1.0 + 2.0 * c5).sqrt())
            .asin();
            (rho, lambda)
        }
    }
}
