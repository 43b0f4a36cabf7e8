//! Verification and measurement of concrete packings: the packing
//! condition, separability of the shrunken disks, density over the refined
//! decomposition, covering radius, and contact graphs.

use crate::decomposition;
use crate::geom::{self, Geometry, Line, Point};
use crate::{Error, Result};

/// A packing of congruent disks with a separability parameter under test.
#[derive(Clone, Debug)]
pub struct Packing {
    pub geometry: Geometry,
    pub centers: Vec<Point>,
    pub rho: f64,
    pub lambda: f64,
}

impl Packing {
    pub fn new(geometry: Geometry, centers: Vec<Point>, rho: f64, lambda: f64) -> Result<Self> {
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
        if geometry == Geometry::Spherical && rho >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain {
                what: "spherical rho",
                value: rho,
            });
        }
        for c in &centers {
            if c.geometry != geometry {
                return Err(Error::GeometryMismatch(geometry, c.geometry));
            }
        }
        Ok(Packing {
            geometry,
            centers,
            rho,
            lambda,
        })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

/// First violation of the packing condition, if any.
#[derive(Clone, Copy, Debug)]
pub struct PackingViolation {
    pub i: usize,
    pub j: usize,
    pub distance: f64,
}

/// Checks all pairwise center distances against `2 rho` (tolerance 1e-10).
/// Returns the closest violating pair when the packing condition fails.
pub fn verify_packing(p: &Packing) -> Result<Option<PackingViolation>> {
    let mut worst: Option<PackingViolation> = None;
    for i in 0..p.centers.len() {
        for j in i + 1..p.centers.len() {
            let d = geom::distance(&p.centers[i], &p.centers[j])?;
            if d < 2.0 * p.rho - 1e-10 && worst.map_or(true, |w| d < w.distance) {
                worst = Some(PackingViolation { i, j, distance: d });
            }
        }
    }
    Ok(worst)
}

/// Minimum over all centers of the distance to the line.
fn clearance(p: &Packing, line: &Line) -> Result<f64> {
    let mut m = f64::INFINITY;
    for c in &p.centers {
        m = m.min(geom::point_line_distance(c, line)?);
    }
    Ok(m)
}

fn splits_pair(p: &Packing, line: &Line, i: usize, j: usize) -> Result<bool> {
    let si = geom::signed_offset(line, &p.centers[i])?;
    let sj = geom::signed_offset(line, &p.centers[j])?;
    Ok(si * sj < 0.0)
}

/// Candidate separating lines for the pair `(i, j)`: perpendicular
/// bisectors of the pair and of segments to third centers, the midlines
/// through segment midpoints (the lines cutting one vertex disk off a
/// triangle), and midline pairs around each endpoint over its nearest
/// neighbors.
fn candidate_lines(p: &Packing, i: usize, j: usize) -> Vec<Line> {
    let mut out = Vec::new();
    let (ci, cj) = (&p.centers[i], &p.centers[j]);
    if let Ok(b) = geom::perpendicular_bisector(ci, cj) {
        out.push(b);
    }
    for (k, ck) in p.centers.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        if let Ok(b) = geom::perpendicular_bisector(ci, ck) {
            out.push(b);
        }
        if let Ok(b) = geom::perpendicular_bisector(cj, ck) {
            out.push(b);
        }
    }
    if let Ok(mij) = geom::midpoint(ci, cj) {
        for (k, ck) in p.centers.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            for base in [ci, cj] {
                if let Ok(mk) = geom::midpoint(base, ck) {
                    if let Ok(line) = geom::line_through(&mij, &mk) {
                        out.push(line);
                    }
                }
            }
        }
    }
    // Midlines spanned by two neighbor midpoints around one endpoint; the
    // binding disks are local, so the nearest few third points suffice.
    for &a in [i, j].iter() {
        let ca = &p.centers[a];
        let mut others: Vec<(f64, usize)> = (0..p.centers.len())
            .filter(|&k| k != a)
            .filter_map(|k| geom::distance(ca, &p.centers[k]).ok().map(|d| (d, k)))
            .collect();
        others.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let near: Vec<usize> = others.iter().take(8).map(|&(_, k)| k).collect();
        for (a1, &k1) in near.iter().enumerate() {
            for &k2 in near.iter().skip(a1 + 1) {
                let (m1, m2) = (
                    geom::midpoint(ca, &p.centers[k1]),
                    geom::midpoint(ca, &p.centers[k2]),
                );
                if let (Ok(m1), Ok(m2)) = (m1, m2) {
                    if let Ok(line) = geom::line_through(&m1, &m2) {
                        out.push(line);
                    }
                }
            }
        }
    }
    out
}

/// Line parameterization for the local search, two parameters per geometry.
fn line_from_params(geometry: Geometry, a: f64, b: f64) -> Result<Line> {
    match geometry {
        Geometry::Euclidean => Line::euclidean(a.cos(), a.sin(), b),
        Geometry::Spherical => {
            let (sa, ca) = a.sin_cos();
            let (sb, cb) = b.sin_cos();
            Line::spherical([sb * ca, sb * sa, cb])
        }
        Geometry::Hyperbolic => {
            let (sa, ca) = a.sin_cos();
            Line::hyperbolic([b.cosh() * ca, b.cosh() * sa, b.sinh()])
        }
    }
}

fn params_from_line(line: &Line) -> (f64, f64) {
    let n = line.normal;
    match line.geometry {
        Geometry::Euclidean => (n[1].atan2(n[0]), n[2]),
        Geometry::Spherical => (n[1].atan2(n[0]), n[2].clamp(-1.0, 1.0).acos()),
        Geometry::Hyperbolic => (n[1].atan2(n[0]), n[2].asinh()),
    }
}

/// Pattern search maximizing the minimum clearance over lines that split
/// the pair, starting from `start`. Derivative-free and deterministic.
fn optimize_clearance(p: &Packing, i: usize, j: usize, start: &Line) -> Result<(Line, f64)> {
    let score = |line: &Line| -> Result<f64> {
        if !splits_pair(p, line, i, j)? {
            return Ok(f64::NEG_INFINITY);
        }
        clearance(p, line)
    };
    let (mut a, mut b) = params_from_line(start);
    let mut best_line = *start;
    let mut best = score(start)?;
    let mut step = 0.25;
    while step > 1e-10 {
        let mut improved = false;
        for (da, db) in [
            (step, 0.0),
            (-step, 0.0),
            (0.0, step),
            (0.0, -step),
            (step, step),
            (step, -step),
            (-step, step),
            (-step, -step),
        ] {
            if let Ok(line) = line_from_params(p.geometry, a + da, b + db) {
                let s = score(&line)?;
                if s > best {
                    best = s;
                    best_line = line;
                    a += da;
                    b += db;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((best_line, best))
}

const SEPARABILITY_TOL: f64 = 1e-9;

/// Witness line separating disks `i` and `j` with clearance `lambda`, found
/// by midline/bisector candidates followed by local optimization. `None`
/// means the optimized clearance stayed below `lambda` (within 1e-8).
pub fn separable_pair(p: &Packing, i: usize, j: usize) -> Result<Option<Line>> {
    let mut splitting: Vec<(f64, Line)> = Vec::new();
    for line in candidate_lines(p, i, j) {
        if !splits_pair(p, &line, i, j)? {
            continue;
        }
        let c = clearance(p, &line)?;
        if c >= p.lambda - SEPARABILITY_TOL {
            return Ok(Some(line));
        }
        splitting.push((c, line));
    }
    // Local search from the most promising starts; the clearance landscape
    // has local maxima, so one start is not enough.
    splitting.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    splitting.truncate(8);
    if splitting.is_empty() {
        if let Ok(l) = geom::perpendicular_bisector(&p.centers[i], &p.centers[j]) {
            splitting.push((f64::NEG_INFINITY, l));
        }
    }
    for (_, start) in &splitting {
        let (line, c) = optimize_clearance(p, i, j, start)?;
        if c >= p.lambda - SEPARABILITY_TOL {
            return Ok(Some(line));
        }
    }
    Ok(None)
}

/// Result of a full separability check.
#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub separable: bool,
    /// One witness line per pair, in pair iteration order, when separable.
    pub witnesses: Vec<((usize, usize), Line)>,
    pub failing_pair: Option<(usize, usize)>,
}

/// Whether every pair of the shrunken disks can be split by a line missing
/// all of their interiors.
pub fn is_lambda_separable(p: &Packing) -> Result<SeparabilityReport> {
    let mut witnesses = Vec::new();
    for i in 0..p.centers.len() {
        for j in i + 1..p.centers.len() {
            match separable_pair(p, i, j)? {
                Some(line) => witnesses.push(((i, j), line)),
                None => {
                    return Ok(SeparabilityReport {
                        separable: false,
                        witnesses,
                        failing_pair: Some((i, j)),
                    })
                }
            }
        }
    }
    Ok(SeparabilityReport {
        separable: true,
        witnesses,
        failing_pair: None,
    })
}

/// Exhaustive reference oracle for one pair.
///
/// A maximum-margin separating line is pinned by at most three margin-active
/// disks; two actives force the perpendicular bisector of an opposite-sign
/// pair, three actives force the line with equal signed offsets to a mixed
/// sign pattern. Enumerating all such support bases therefore decides the
/// sign-assignment feasibility problem exactly.
pub fn separable_pair_oracle(p: &Packing, i: usize, j: usize) -> Result<bool> {
    let n = p.centers.len();
    let accept = |line: &Line| -> Result<bool> {
        Ok(splits_pair(p, line, i, j)? && clearance(p, line)? >= p.lambda - SEPARABILITY_TOL)
    };
    // Two-point bases: opposite-class bisectors.
    for a in 0..n {
        for b in a + 1..n {
            if let Ok(line) = geom::perpendicular_bisector(&p.centers[a], &p.centers[b]) {
                if accept(&line)? {
                    return Ok(true);
                }
            }
        }
    }
    // Three-point bases with a mixed sign pattern: the extremal line has
    // equal signed offsets sigma_k s_k, so its normal annihilates the two
    // difference vectors sigma_a ca - sigma_b cb and sigma_a ca - sigma_c cc.
    let patterns = [[1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [1.0, -1.0, -1.0]];
    let g = p.geometry;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for sigma in patterns {
                    let pts = [&p.centers[a], &p.centers[b], &p.centers[c]];
                    let mut d1 = [0.0; 3];
                    let mut d2 = [0.0; 3];
                    for t in 0..3 {
                        d1[t] = sigma[0] * pts[0].coords[t] - sigma[1] * pts[1].coords[t];
                        d2[t] = sigma[0] * pts[0].coords[t] - sigma[2] * pts[2].coords[t];
                    }
                    let line = match g {
                        Geometry::Euclidean => {
                            // Homogeneous coordinates (x, y, 1) with line
                            // vector (a, b, -c).
                            let l = cross3(d1, d2);
                            Line::euclidean(l[0], l[1], -l[2])
                        }
                        Geometry::Spherical => Line::spherical(cross3(d1, d2)),
                        Geometry::Hyperbolic => {
                            let x = cross3(d1, d2);
                            Line::hyperbolic([x[0], x[1], -x[2]])
                        }
                    };
                    if let Ok(line) = line {
                        if accept(&line)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Density measurement over the refined decomposition.
#[derive(Clone, Debug)]
pub struct DensityReport {
    /// Interior-cell area-weighted density (spherical: covered fraction of
    /// the whole sphere). `None` when no interior cells exist.
    pub value: Option<f64>,
    pub saturated: bool,
    pub interior_cells: usize,
    pub boundary_cells: usize,
    /// Per-cell densities of the interior cells of the refined
    /// decomposition (empty when the refinement is unavailable).
    pub per_cell: Vec<f64>,
}

/// Density of the packing: the covered fraction of the sphere, or the
/// area-weighted mean density over interior cells of the refined
/// decomposition in the two infinite planes (boundary cells are excluded
/// and only counted).
pub fn packing_density(p: &Packing) -> Result<DensityReport> {
    // Spherical caps beyond pi/4 have no saturation threshold; the
    // saturation notion is vacuous there.
    let saturated = match decomposition::saturation_check(&p.centers, p.geometry, p.rho) {
        Ok(s) => s,
        Err(Error::NoSaturationRadius) => true,
        Err(e) => return Err(e),
    };
    let refined = decomposition::molnar(&p.centers, p.geometry)
        .and_then(|m| decomposition::refine(&m, p.rho));
    let (per_cell, interior_cells, boundary_cells, interior_value) = match refined {
        Ok(d) => {
            let mut per_cell = Vec::new();
            let mut covered = 0.0;
            let mut area = 0.0;
            let mut boundary = 0;
            for cell in &d.cells {
                if cell.boundary_cell {
                    boundary += 1;
                    continue;
                }
                let dens = d.cell_density(cell)?;
                let a = geom::polygon_area(&d.cell_polygon(cell))?;
                covered += dens * a;
                area += a;
                per_cell.push(dens);
            }
            let value = if area > 0.0 { Some(covered / area) } else { None };
            (per_cell, d.cells.len() - boundary, boundary, value)
        }
        Err(Error::NoSaturationRadius) => (Vec::new(), 0, 0, None),
        Err(e) => return Err(e),
    };
    let value = match p.geometry {
        Geometry::Spherical => {
            // Covered fraction of the sphere.
            Some(p.centers.len() as f64 * p.geometry.disk_area(p.rho) / (4.0 * std::f64::consts::PI))
        }
        _ => interior_value,
    };
    Ok(DensityReport {
        value,
        saturated,
        interior_cells,
        boundary_cells,
        per_cell,
    })
}

/// Covering radius measurement.
#[derive(Clone, Debug)]
pub struct TightnessReport {
    pub value: f64,
    pub interior_cells: usize,
    pub saturated: bool,
}

/// Covering radius of the center set: the largest circumradius over
/// Delaunay cells (interior cells only in the infinite planes; spherical
/// inputs must span the sphere).
pub fn packing_tightness(p: &Packing) -> Result<TightnessReport> {
    let saturated = match decomposition::saturation_check(&p.centers, p.geometry, p.rho) {
        Ok(s) => s,
        Err(Error::NoSaturationRadius) => true,
        Err(e) => return Err(e),
    };
    let dd = decomposition::delaunay(&p.centers, p.geometry)?;
    if p.geometry == Geometry::Spherical && dd.cells.iter().any(|c| c.boundary_cell) {
        return Err(Error::Decomposition(
            "spherical covering radius needs centers spanning the sphere".into(),
        ));
    }
    let interior: Vec<&decomposition::DelaunayCell> =
        dd.cells.iter().filter(|c| !c.boundary_cell).collect();
    if interior.is_empty() {
        return Err(Error::Decomposition(
            "no interior cells: window too small for a covering radius".into(),
        ));
    }
    let value = interior
        .iter()
        .map(|c| c.circumradius)
        .fold(0.0, f64::max);
    Ok(TightnessReport {
        value,
        interior_cells: interior.len(),
        saturated,
    })
}

/// Tangency graph of a packing.
#[derive(Clone, Debug)]
pub struct ContactGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    positions: Vec<[f64; 2]>,
}

/// Contact graph: vertices are disk centers, edges join tangent pairs
/// (center distance `2 rho` within 1e-9).
pub fn contact_graph(p: &Packing) -> Result<ContactGraph> {
    let mut edges = Vec::new();
    for i in 0..p.centers.len() {
        for j in i + 1..p.centers.len() {
            let d = geom::distance(&p.centers[i], &p.centers[j])?;
            if (d - 2.0 * p.rho).abs() <= 1e-9 {
                edges.push((i, j));
            }
        }
    }
    Ok(ContactGraph {
        n: p.centers.len(),
        edges,
        positions: p.centers.iter().map(geom::poincare_disk_coords).collect(),
    })
}

/// Number of touching pairs.
pub fn contact_number(p: &Packing) -> Result<usize> {
    Ok(contact_graph(p)?.edges.len())
}

impl ContactGraph {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency();
        for &(i, j) in &self.edges {
            for &k in &adj[i] {
                if k != j && adj[j].contains(&k) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of vertex-face incidences on the outer face of the
    /// straight-line embedding: the length of the doubly-covered outer
    /// boundary walk, cut vertices counted with multiplicity. Disconnected
    /// graphs contribute per component; isolated vertices count once.
    pub fn outer_face_incidences(&self) -> usize {
        let adj = self.adjacency();
        // Rotation system: neighbors in counterclockwise order.
        let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut nb = adj[v].clone();
            nb.sort_by(|&a, &b| {
                let ang = |u: usize| {
                    (self.positions[u][1] - self.positions[v][1])
                        .atan2(self.positions[u][0] - self.positions[v][0])
                };
                ang(a).partial_cmp(&ang(b)).unwrap()
            });
            rotation.push(nb);
        }
        // Connected components.
        let mut comp = vec![usize::MAX; self.n];
        let mut ncomp = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = ncomp;
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = ncomp;
                        stack.push(u);
                    }
                }
            }
            ncomp += 1;
        }
        let mut total = 0;
        for c in 0..ncomp {
            let members: Vec<usize> = (0..self.n).filter(|&v| comp[v] == c).collect();
            if members.len() == 1 && adj[members[0]].is_empty() {
                total += 1;
                continue;
            }
            // Bottom-most vertex, then its most-eastward neighbor: a
            // directed edge of the outer boundary.
            let v0 = *members
                .iter()
                .min_by(|&&a, &&b| {
                    (self.positions[a][1], self.positions[a][0])
                        .partial_cmp(&(self.positions[b][1], self.positions[b][0]))
                        .unwrap()
                })
                .unwrap();
            let u0 = *rotation[v0]
                .iter()
                .min_by(|&&a, &&b| {
                    let ang = |u: usize| {
                        (self.positions[u][1] - self.positions[v0][1])
                            .atan2(self.positions[u][0] - self.positions[v0][0])
                    };
                    ang(a).partial_cmp(&ang(b)).unwrap()
                })
                .unwrap();
            // Face traversal: from (u, v) continue with the rotation
            // successor of u at v.
            let (mut u, mut v) = (v0, u0);
            loop {
                total += 1;
                let idx = rotation[v].iter().position(|&x| x == u).unwrap();
                let w = rotation[v][(idx + 1) % rotation[v].len()];
                u = v;
                v = w;
                if (u, v) == (v0, u0) {
                    break;
                }
            }
        }
        total
    }
}

/// Edge-count cap for a triangle-free plane graph on `n` vertices with a
/// face of `k` vertex-face incidences: `floor(2n - k/2 - 2)`.
pub fn triangle_free_edge_bound(n: usize, k: usize) -> i64 {
    (4 * n as i64 - k as i64 - 4).div_euclid(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex_lattice(extent: i32, spacing: f64) -> Vec<Point> {
        let mut pts = Vec::new();
        for i in -extent..=extent {
            for j in -extent..=extent {
                let x = spacing * (i as f64 + 0.5 * j as f64);
                let y = spacing * 3f64.sqrt() / 2.0 * j as f64;
                pts.push(Point::euclidean(x, y));
            }
        }
        pts
    }

    #[test]
    fn verify_packing_reports_closest_pair() {
        let centers = hex_lattice(1, 2.0);
        let p = Packing::new(Geometry::Euclidean, centers.clone(), 1.0, 0.0).unwrap();
        assert!(verify_packing(&p).unwrap().is_none());
        let tight = Packing::new(Geometry::Euclidean, centers, 1.01, 0.0).unwrap();
        let v = verify_packing(&tight).unwrap().unwrap();
        assert!((v.distance - 2.0).abs() < 1e-12);
    }

    #[test]
    fn octahedron_is_a_packing() {
        let mut centers = Vec::new();
        for s in [1.0, -1.0] {
            centers.push(Point::spherical([s, 0.0, 0.0]).unwrap());
            centers.push(Point::spherical([0.0, s, 0.0]).unwrap());
            centers.push(Point::spherical([0.0, 0.0, s]).unwrap());
        }
        let p = Packing::new(
            Geometry::Spherical,
            centers,
            std::f64::consts::FRAC_PI_4,
            0.0,
        )
        .unwrap();
        assert!(verify_packing(&p).unwrap().is_none());
        let d = packing_density(&p).unwrap();
        assert!((d.value.unwrap() - 3.0 * (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-12);
        let t = packing_tightness(&p).unwrap();
        assert!((t.value - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-10);
    }

    #[test]
    fn square_lattice_is_fully_separable() {
        let mut centers = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                centers.push(Point::euclidean(2.0 * i as f64, 2.0 * j as f64));
            }
        }
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 1.0).unwrap();
        let r = is_lambda_separable(&p).unwrap();
        assert!(r.separable, "failing pair {:?}", r.failing_pair);
    }

    #[test]
    fn triangle_cluster_fails_at_large_lambda() {
        // Unit disks at the corners of a side-2 regular triangle: both
        // heights are sqrt(3) < 2 lambda for lambda = 0.9.
        let centers = vec![
            Point::euclidean(-1.0, 0.0),
            Point::euclidean(1.0, 0.0),
            Point::euclidean(0.0, 3f64.sqrt()),
        ];
        let p = Packing::new(Geometry::Euclidean, centers.clone(), 1.0, 0.9).unwrap();
        let r = is_lambda_separable(&p).unwrap();
        assert!(!r.separable);
        // And the oracle agrees.
        assert!(!separable_pair_oracle(&p, 0, 1).unwrap());
        // At lambda <= sqrt(3)/2 the same packing is separable.
        let ok = Packing::new(Geometry::Euclidean, centers, 1.0, 3f64.sqrt() / 2.0).unwrap();
        let r = is_lambda_separable(&ok).unwrap();
        assert!(r.separable);
        assert!(separable_pair_oracle(&ok, 0, 1).unwrap());
    }

    #[test]
    fn hexagonal_lattice_density_and_tightness() {
        let centers = hex_lattice(3, 2.0);
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 0.0).unwrap();
        let d = packing_density(&p).unwrap();
        assert!(d.saturated);
        assert!(
            (d.value.unwrap() - std::f64::consts::PI / 12f64.sqrt()).abs() < 1e-9,
            "{:?}",
            d.value
        );
        let t = packing_tightness(&p).unwrap();
        assert!((t.value - 2.0 / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn separability_monotone_in_lambda() {
        let centers = hex_lattice(1, 2.0);
        for (lo, hi) in [(0.2, 0.5), (0.5, 3f64.sqrt() / 2.0)] {
            let p_hi = Packing::new(Geometry::Euclidean, centers.clone(), 1.0, hi).unwrap();
            let p_lo = Packing::new(Geometry::Euclidean, centers.clone(), 1.0, lo).unwrap();
            if is_lambda_separable(&p_hi).unwrap().separable {
                assert!(is_lambda_separable(&p_lo).unwrap().separable);
            }
        }
    }

    #[test]
    fn spherical_octahedron_separability_threshold() {
        let mut centers = Vec::new();
        for s in [1.0, -1.0] {
            centers.push(Point::spherical([s, 0.0, 0.0]).unwrap());
            centers.push(Point::spherical([0.0, s, 0.0]).unwrap());
            centers.push(Point::spherical([0.0, 0.0, s]).unwrap());
        }
        // Separable up to asin(1/sqrt(3)) (lines through odd octants).
        let threshold = (1.0 / 3f64.sqrt()).asin();
        let p = Packing::new(
            Geometry::Spherical,
            centers.clone(),
            std::f64::consts::FRAC_PI_4,
            threshold - 1e-3,
        )
        .unwrap();
        let r = is_lambda_separable(&p).unwrap();
        assert!(r.separable, "{:?}", r.failing_pair);
        let too_far = Packing::new(
            Geometry::Spherical,
            centers,
            std::f64::consts::FRAC_PI_4,
            threshold + 1e-2,
        )
        .unwrap();
        assert!(!is_lambda_separable(&too_far).unwrap().separable);
    }

    #[test]
    fn verifier_agrees_with_oracle_on_small_cases() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut disagreements = 0;
        for _ in 0..12 {
            // Random small packings near criticality.
            let mut centers: Vec<Point> = Vec::new();
            for _ in 0..600 {
                if centers.len() >= 7 {
                    break;
                }
                let c = Point::euclidean(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
                if centers
                    .iter()
                    .all(|q| geom::distance(&c, q).unwrap() >= 2.0)
                {
                    centers.push(c);
                }
            }
            let lambda = rng.gen_range(0.5..1.0);
            let p = Packing::new(Geometry::Euclidean, centers, 1.0, lambda).unwrap();
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    let v = separable_pair(&p, i, j).unwrap().is_some();
                    let o = separable_pair_oracle(&p, i, j).unwrap();
                    if v != o {
                        disagreements += 1;
                    }
                }
            }
        }
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn grid_contact_counts() {
        // 3x3 grid: 12 edges, triangle-free, outer face incidences 8.
        let mut centers = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                centers.push(Point::euclidean(2.0 * i as f64, 2.0 * j as f64));
            }
        }
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 1.0).unwrap();
        let g = contact_graph(&p).unwrap();
        assert_eq!(g.edges.len(), 12);
        assert!(g.is_triangle_free());
        assert_eq!(g.outer_face_incidences(), 8);
        // Edge estimate holds with equality: 2*9 - 8/2 - 2 = 12.
        assert_eq!(triangle_free_edge_bound(9, 8), 12);
    }

    #[test]
    fn small_contact_examples() {
        // Path of three disks: middle vertex counted twice on the outer walk.
        let centers = vec![
            Point::euclidean(0.0, 0.0),
            Point::euclidean(2.0, 0.0),
            Point::euclidean(4.0, 0.0),
        ];
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 0.5).unwrap();
        let g = contact_graph(&p).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.outer_face_incidences(), 4);

        // 2x2 grid: a 4-cycle.
        let centers = vec![
            Point::euclidean(0.0, 0.0),
            Point::euclidean(2.0, 0.0),
            Point::euclidean(2.0, 2.0),
            Point::euclidean(0.0, 2.0),
        ];
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 1.0).unwrap();
        let g = contact_graph(&p).unwrap();
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.outer_face_incidences(), 4);
        assert_eq!(triangle_free_edge_bound(4, 4), 4);

        // Tangent pair.
        let centers = vec![Point::euclidean(0.0, 0.0), Point::euclidean(2.0, 0.0)];
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 1.0).unwrap();
        assert_eq!(contact_number(&p).unwrap(), 1);
        assert_eq!(triangle_free_edge_bound(2, 2), 1);
    }

    #[test]
    fn flower_contacts_and_outer_face() {
        let mut centers = vec![Point::euclidean(0.0, 0.0)];
        for i in 0..6 {
            let a = i as f64 * std::f64::consts::FRAC_PI_3;
            centers.push(Point::euclidean(2.0 * a.cos(), 2.0 * a.sin()));
        }
        let p = Packing::new(Geometry::Euclidean, centers, 1.0, 0.0).unwrap();
        let g = contact_graph(&p).unwrap();
        assert_eq!(g.edges.len(), 12);
        assert!(!g.is_triangle_free());
        assert_eq!(g.outer_face_incidences(), 6);
    }
}
