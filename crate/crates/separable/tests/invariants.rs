//! Cross-module invariants on randomized inputs: the per-cell density
//! inequality behind all density theorems, and contact-count envelopes for
//! the generated packings.

mod common;

use separable::bounds::{self, ContactUpper};
use separable::decomposition;
use separable::generators;
use separable::geom::Geometry;
use separable::packing;

#[test]
fn per_cell_density_below_bound_for_plain_packings() {
    // Plain packings (lambda = 0) are trivially separable, so every
    // interior cell of the refined decomposition obeys the density bound.
    for geometry in [Geometry::Euclidean, Geometry::Spherical, Geometry::Hyperbolic] {
        let mut accepted = 0;
        let mut seed = 0;
        while accepted < 10 && seed < 40 {
            seed += 1;
            let rho = if geometry == Geometry::Spherical { 0.22 } else { 0.25 };
            let centers = common::random_saturated_centers(geometry, rho, 2.0, 7000 + seed);
            if centers.len() < 5
                || !decomposition::saturation_check(&centers, geometry, rho).unwrap()
            {
                continue;
            }
            accepted += 1;
            let bound = bounds::density_bound(geometry, 0.0, rho).unwrap().value;
            let m = decomposition::molnar(&centers, geometry).unwrap();
            let d = decomposition::refine(&m, rho).unwrap();
            for cell in &d.cells {
                if cell.boundary_cell {
                    continue;
                }
                let dens = d.cell_density(cell).unwrap();
                assert!(
                    dens <= bound + 1e-9,
                    "{geometry:?} seed={seed}: cell density {dens} above bound {bound}"
                );
            }
        }
        assert!(accepted >= 10, "{geometry:?}: too few saturated draws");
    }
}

#[test]
fn separable_lattice_cell_densities_below_bound() {
    // The extremal lattices meet the bound with equality on every interior
    // cell; nearby admissible lambdas stay below it.
    for lambda in [0.5, 0.93, 1.0] {
        let p = generators::extremal_density_lattice(lambda, 3).unwrap();
        let bound = bounds::density_bound_euclidean(lambda).unwrap().value;
        let m = decomposition::molnar(&p.centers, p.geometry).unwrap();
        let d = decomposition::refine(&m, p.rho).unwrap();
        for cell in d.cells.iter().filter(|c| !c.boundary_cell) {
            let dens = d.cell_density(cell).unwrap();
            assert!(dens <= bound + 1e-9);
            assert!(dens >= bound - 1e-9, "extremal cells meet the bound");
        }
    }
}

#[test]
fn contact_counts_respect_the_envelope() {
    // Sanity envelope: the two-term upper expression with a +2 constant
    // dominates the generated separable packings (not a theorem assertion,
    // just a consistency check of the reported expression).
    for k in 2..=8usize {
        let p = generators::square_grid(k).unwrap();
        let n = p.len();
        let contacts = packing::contact_number(&p).unwrap() as f64;
        match bounds::contact_bounds(n as u64, p.lambda).unwrap().upper {
            ContactUpper::TwoTermWithUnresolvedConstant { leading_value } => {
                assert!(contacts <= leading_value + 2.0, "grid k={k}");
            }
            ContactUpper::Exact(v) => assert!(contacts <= v as f64),
        }
    }
    for lambda in [0.9, 1.0] {
        let p = generators::extremal_density_lattice(lambda, 3).unwrap();
        let n = p.len();
        let contacts = packing::contact_number(&p).unwrap() as f64;
        match bounds::contact_bounds(n as u64, lambda).unwrap().upper {
            ContactUpper::TwoTermWithUnresolvedConstant { leading_value } => {
                assert!(contacts <= leading_value + 2.0, "lattice lambda={lambda}");
            }
            ContactUpper::Exact(v) => assert!(contacts <= v as f64),
        }
    }
}

#[test]
fn named_tilings_sit_on_regime_boundaries() {
    // The two doubly-extremal tilings land exactly on branch boundaries of
    // the spherical tightness bound: for the 16-triangle tiling rho equals
    // the half-leg at the circumradius minimizer, for the 20-triangle tiling
    // rho equals the regular-triangle fixed point. In both cases the bound
    // value is the circumradius of the tiling triangle itself.
    use separable::formulas::{self, Branch, Variant};
    use separable::triangles;

    let (rho16, lam16) =
        generators::special_tiling_constants(generators::NamedTiling::H16);
    let ym = formulas::y_min_radius(Geometry::Spherical, lam16).unwrap();
    let x_at_min = formulas::half_leg_sph_one(ym, lam16).unwrap();
    assert!((x_at_min - rho16).abs() < 1e-9, "{x_at_min} vs {rho16}");

    let (rho20, lam20) =
        generators::special_tiling_constants(generators::NamedTiling::H20);
    let ys = formulas::y_regular_min(Geometry::Spherical, lam20).unwrap();
    assert!((ys - rho20).abs() < 1e-9, "{ys} vs {rho20}");

    for (rho, lambda) in [(rho16, lam16), (rho20, lam20)] {
        let tb = bounds::tightness_bound_spherical(lambda, rho).unwrap();
        let y = formulas::half_leg_inverse(Variant::One, Branch::SphLow, rho, lambda).unwrap();
        let tiling_triangle =
            triangles::family_triangle(Geometry::Spherical, Some(Variant::One), y, lambda)
                .unwrap();
        assert!((tb.value - tiling_triangle.circumradius().unwrap()).abs() < 1e-9);
        let db = bounds::density_bound_spherical(lambda, rho).unwrap();
        let expected = bounds::cap_density(
            Geometry::Spherical,
            rho,
            tiling_triangle.angle_sum().unwrap(),
            tiling_triangle.area().unwrap(),
        );
        assert!((db.value - expected).abs() < 1e-9);
    }
}

#[test]
fn lattice_contact_counts() {
    // The lambda > sqrt(3)/2 extremal lattices touch along the two unit-leg
    // directions only; a (2w+1)^2 parallelogram window then has
    // (2w+1) 2w + (2w)^2 contacts.
    for lambda in [0.9, 0.93, 1.0] {
        let w = 3usize;
        let p = generators::extremal_density_lattice(lambda, w).unwrap();
        let contacts = packing::contact_number(&p).unwrap();
        assert_eq!(contacts, 2 * w * (4 * w + 1), "lambda={lambda}");
    }
}
