//! Incremental 3D convex hull for points on (or very near) the unit sphere.
//!
//! All the planar and curved Delaunay structures in this crate reduce to one
//! hull computation over unit vectors, so the input is always well scaled
//! and an absolute epsilon is meaningful. Points within the tolerance of a
//! face plane are treated as visible, which keeps cocircular inputs (square
//! lattices, platonic vertex sets) as hull vertices; the resulting coplanar
//! face patches are merged downstream.

use crate::{Error, Result};

const EPS: f64 = 1e-12;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Signed distance of `p` from the plane of face `(i, j, k)`.
fn face_distance(pts: &[[f64; 3]], f: [usize; 3], p: [f64; 3]) -> f64 {
    let n = cross(sub(pts[f[1]], pts[f[0]]), sub(pts[f[2]], pts[f[0]]));
    let len = norm(n);
    if len < 1e-18 {
        return 0.0;
    }
    dot(n, sub(p, pts[f[0]])) / len
}

/// Convex hull of `pts`, returned as outward-oriented triangles. Fails if
/// the input is degenerate (fewer than 4 affinely independent points) or if
/// some point ends up strictly interior, which for sphere inputs indicates
/// duplicates.
pub fn convex_hull(pts: &[[f64; 3]]) -> Result<Vec<[usize; 3]>> {
    let n = pts.len();
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, got: n });
    }

    // Initial simplex: spread-out extremes.
    let i0 = (0..n)
        .min_by(|&a, &b| pts[a].partial_cmp(&pts[b]).unwrap())
        .unwrap();
    let i1 = (0..n)
        .max_by(|&a, &b| {
            norm(sub(pts[a], pts[i0]))
                .partial_cmp(&norm(sub(pts[b], pts[i0])))
                .unwrap()
        })
        .unwrap();
    if norm(sub(pts[i1], pts[i0])) < EPS {
        return Err(Error::DegenerateInput);
    }
    let i2 = (0..n)
        .max_by(|&a, &b| {
            let na = norm(cross(sub(pts[i1], pts[i0]), sub(pts[a], pts[i0])));
            let nb = norm(cross(sub(pts[i1], pts[i0]), sub(pts[b], pts[i0])));
            na.partial_cmp(&nb).unwrap()
        })
        .unwrap();
    if norm(cross(sub(pts[i1], pts[i0]), sub(pts[i2], pts[i0]))) < EPS {
        return Err(Error::DegenerateInput);
    }
    let base = [i0, i1, i2];
    let i3 = (0..n)
        .max_by(|&a, &b| {
            face_distance(pts, base, pts[a])
                .abs()
                .partial_cmp(&face_distance(pts, base, pts[b]).abs())
                .unwrap()
        })
        .unwrap();
    if face_distance(pts, base, pts[i3]).abs() < EPS {
        // All points coplanar: collinear input in the source geometry.
        return Err(Error::DegenerateInput);
    }

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let centroid = {
        let mut c = [0.0; 3];
        for &i in &[i0, i1, i2, i3] {
            for k in 0..3 {
                c[k] += pts[i][k] / 4.0;
            }
        }
        c
    };
    for f in [
        [i0, i1, i2],
        [i0, i1, i3],
        [i0, i2, i3],
        [i1, i2, i3],
    ] {
        let mut f = f;
        if face_distance(pts, f, centroid) > 0.0 {
            f.swap(1, 2);
        }
        faces.push(f);
    }

    let seed = [i0, i1, i2, i3];
    for p in 0..n {
        if seed.contains(&p) {
            continue;
        }
        let q = pts[p];
        // Coplanar counts as visible so on-face points become vertices.
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&fi| face_distance(pts, faces[fi], q) > -EPS)
            .collect();
        if visible.is_empty() {
            // Strictly interior: impossible for distinct unit vectors.
            return Err(Error::DegenerateInput);
        }
        use std::collections::HashSet;
        let visible_set: HashSet<usize> = visible.iter().copied().collect();
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for &fi in &visible {
            let f = faces[fi];
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                directed.insert(e);
            }
        }
        let mut horizon: Vec<(usize, usize)> = directed
            .iter()
            .copied()
            .filter(|&(a, b)| !directed.contains(&(b, a)))
            .collect();
        horizon.sort_unstable();
        let mut next: Vec<[usize; 3]> = (0..faces.len())
            .filter(|fi| !visible_set.contains(fi))
            .map(|fi| faces[fi])
            .collect();
        for (a, b) in horizon {
            next.push([a, b, p]);
        }
        faces = next;
    }

    // Every input point must have survived as a hull vertex.
    let mut used = vec![false; n];
    for f in &faces {
        for &v in f {
            used[v] = true;
        }
    }
    if used.iter().any(|u| !u) {
        return Err(Error::DegenerateInput);
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_hull() {
        let pts = vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ];
        let faces = convex_hull(&pts).unwrap();
        assert_eq!(faces.len(), 4);
        // Outward orientation: positive distance from the origin side.
        for f in &faces {
            assert!(face_distance(&pts, *f, [0.0, 0.0, 0.0]) < 0.0);
        }
    }

    #[test]
    fn octahedron_hull() {
        let pts = vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let faces = convex_hull(&pts).unwrap();
        assert_eq!(faces.len(), 8);
    }

    #[test]
    fn cube_hull_keeps_coplanar_vertices() {
        let mut pts = Vec::new();
        for x in [-1.0f64, 1.0] {
            for y in [-1.0f64, 1.0] {
                for z in [-1.0f64, 1.0] {
                    pts.push([x / 3f64.sqrt(), y / 3f64.sqrt(), z / 3f64.sqrt()]);
                }
            }
        }
        let faces = convex_hull(&pts).unwrap();
        // 6 square faces, each triangulated into 2.
        assert_eq!(faces.len(), 12);
        let mut used = vec![false; 8];
        for f in &faces {
            for &v in f {
                used[v] = true;
            }
        }
        assert!(used.iter().all(|&u| u));
    }

    #[test]
    fn collinear_rejected() {
        let pts = vec![
            [0.0, 0.0, 1.0],
            [0.1, 0.0, 1.0],
            [0.2, 0.0, 1.0],
            [0.3, 0.0, 1.0],
        ];
        assert!(convex_hull(&pts).is_err());
    }
}
