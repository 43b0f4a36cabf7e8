//! Delaunay decompositions, bridge surgery, and the refined two-type cell
//! decomposition used by all density arguments.
//!
//! All three geometries reduce to one 3D convex hull: spherical inputs are
//! used as-is; planar inputs are carried to the sphere by an inverse
//! stereographic projection (with the projection pole playing the point at
//! infinity); hyperbolic inputs go through the Poincare disk first. Both
//! maps send circles to circles, so hull faces are exactly the cells with
//! empty circumdisks. All metric data (circumcenters, radii, areas) is then
//! computed natively in the source geometry.

mod hull3;

use crate::formulas;
use crate::geom::{self, Geometry, Point, PREDICATE_TOL};
use crate::{Error, Result};

/// One Delaunay cell: a convex polygon of input points sharing an empty
/// circumdisk.
#[derive(Clone, Debug)]
pub struct DelaunayCell {
    /// Vertex ids into the decomposition's point list, in boundary order.
    pub vertices: Vec<usize>,
    pub circumcenter: Point,
    pub circumradius: f64,
    /// Whether some side of the cell lies on the convex-hull boundary.
    pub boundary_cell: bool,
}

#[derive(Clone, Debug)]
pub struct DelaunayDecomposition {
    pub geometry: Geometry,
    pub points: Vec<Point>,
    pub cells: Vec<DelaunayCell>,
}

/// Decomposition after bridge surgery: every side separating a cell from
/// its own circumcenter is replaced by the two-segment path through that
/// circumcenter.
#[derive(Clone, Debug)]
pub struct MolnarDecomposition {
    pub geometry: Geometry,
    /// Source points first, inserted circumcenters after.
    pub points: Vec<Point>,
    pub source_count: usize,
    pub cells: Vec<MolnarRawCell>,
    /// Bridges as `(endpoint, circumcenter, endpoint)` point ids.
    pub bridges: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct MolnarRawCell {
    pub boundary: Vec<usize>,
    pub circumcenter: Point,
    pub circumradius: f64,
    /// Pool id of the circumcenter when it appears as a bridge vertex.
    pub center_id: Option<usize>,
    pub boundary_cell: bool,
    /// The cell has a separating side on the hull boundary, where no
    /// neighbor exists to absorb the bridge.
    pub unresolved_separating_side: bool,
}

/// Cell type of the refined decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    /// Triangle containing its circumcenter, circumradius at most the
    /// saturation radius.
    Type1,
    /// Truncated isosceles cell `cl(conv{v, ci, cj} \ conv{v', ci, cj})`
    /// with `v` a Delaunay circumcenter and `v'` on the bisector.
    Type2,
}

#[derive(Clone, Debug)]
pub struct MolnarCell {
    pub kind: CellKind,
    pub boundary: Vec<usize>,
    /// Type 1 only.
    pub circumradius: Option<f64>,
    /// Type 2 only: the source-point pair spanning the cell.
    pub generating_edge: Option<(usize, usize)>,
    /// Type 2 only: the Delaunay circumcenter.
    pub apex: Option<usize>,
    pub boundary_cell: bool,
}

/// The refined decomposition.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub geometry: Geometry,
    pub rho: f64,
    pub saturation_radius: f64,
    pub points: Vec<Point>,
    pub source_count: usize,
    pub cells: Vec<MolnarCell>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Carry the input points onto the unit sphere. Planar and hyperbolic
/// inputs get an extra pole point representing infinity.
fn lift_to_sphere(points: &[Point], geometry: Geometry) -> (Vec<[f64; 3]>, Option<usize>) {
    match geometry {
        Geometry::Spherical => (points.iter().map(|p| p.coords).collect(), None),
        Geometry::Euclidean | Geometry::Hyperbolic => {
            let planar: Vec<[f64; 2]> = points.iter().map(geom::poincare_disk_coords).collect();
            // Normalize so every image sits well inside the unit disk; the
            // similarity preserves circles and thus the hull combinatorics.
            let (cx, cy) = if geometry == Geometry::Euclidean {
                let n = planar.len() as f64;
                let (sx, sy) = planar
                    .iter()
                    .fold((0.0, 0.0), |(ax, ay), p| (ax + p[0], ay + p[1]));
                (sx / n, sy / n)
            } else {
                // The Poincare disk is already bounded; keep it centered.
                (0.0, 0.0)
            };
            let mut max_r: f64 = 1e-9;
            for p in &planar {
                max_r = max_r.max((p[0] - cx).hypot(p[1] - cy));
            }
            let scale = if geometry == Geometry::Euclidean {
                0.8 / max_r
            } else {
                1.0
            };
            let mut lifted: Vec<[f64; 3]> = planar
                .iter()
                .map(|p| {
                    let u = (p[0] - cx) * scale;
                    let v = (p[1] - cy) * scale;
                    let r2 = u * u + v * v;
                    let d = r2 + 1.0;
                    [2.0 * u / d, 2.0 * v / d, (r2 - 1.0) / d]
                })
                .collect();
            let pole = lifted.len();
            lifted.push([0.0, 0.0, 1.0]);
            (lifted, Some(pole))
        }
    }
}

fn validate_points(points: &[Point], geometry: Geometry) -> Result<()> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    for p in points {
        if p.geometry != geometry {
            return Err(Error::GeometryMismatch(geometry, p.geometry));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = geom::distance(&points[i], &points[j])?;
            if d < 1e-9 {
                return Err(Error::DegenerateInput);
            }
        }
    }
    Ok(())
}

fn face_unit_normal(pts: &[[f64; 3]], f: [usize; 3]) -> [f64; 3] {
    let a = pts[f[0]];
    let b = pts[f[1]];
    let c = pts[f[2]];
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt().max(1e-300);
    [n[0] / len, n[1] / len, n[2] / len]
}

/// Delaunay decomposition of a finite point set: the cells of the convex
/// hull of the set (all of the sphere when the set spans it) with the empty
/// circumdisk property; cocircular groups are merged into polygonal cells.
pub fn delaunay(points: &[Point], geometry: Geometry) -> Result<DelaunayDecomposition> {
    validate_points(points, geometry)?;
    let (lifted, pole) = lift_to_sphere(points, geometry);
    let faces = hull3::convex_hull(&lifted)?;

    // Keep only faces that correspond to finite cells of the source
    // geometry: no pole vertex, a plane missing the pole (a plane through
    // the pole is a circle through infinity, i.e. a collinear source
    // triple), and on the sphere a cap of radius < pi/2.
    let kept: Vec<[usize; 3]> = faces
        .into_iter()
        .filter(|f| match pole {
            Some(p) => {
                if f.contains(&p) {
                    return false;
                }
                let n = face_unit_normal(&lifted, *f);
                let d = n[0] * (lifted[p][0] - lifted[f[0]][0])
                    + n[1] * (lifted[p][1] - lifted[f[0]][1])
                    + n[2] * (lifted[p][2] - lifted[f[0]][2]);
                d.abs() > 1e-9
            }
            None => {
                let n = face_unit_normal(&lifted, *f);
                let d = n[0] * lifted[f[0]][0] + n[1] * lifted[f[0]][1] + n[2] * lifted[f[0]][2];
                d > 1e-9
            }
        })
        .collect();
    if kept.is_empty() {
        return Err(Error::DegenerateInput);
    }

    // Native circumcircles. Flat hyperbolic boundary slivers have no
    // circumscribed circle at all (their equidistant curve is a hypercycle);
    // they cannot be cells of a circumdisk decomposition and are excluded,
    // shrinking the covered region at its frontier.
    let mut faces_with_circles = Vec::with_capacity(kept.len());
    let mut centers = Vec::with_capacity(kept.len());
    let mut radii = Vec::with_capacity(kept.len());
    for f in &kept {
        let t = geom::Triangle::new(points[f[0]], points[f[1]], points[f[2]])?;
        match geom::circumcircle(&t) {
            Ok((c, r)) => {
                faces_with_circles.push(*f);
                centers.push(c);
                radii.push(r);
            }
            Err(Error::NoCircumdisk) if geometry == Geometry::Hyperbolic => continue,
            Err(Error::NoCircumdisk) => {
                return Err(Error::Decomposition(
                    "cell circumdisk is not a proper disk of the model".into(),
                ))
            }
            Err(other) => return Err(other),
        }
    }
    let kept = faces_with_circles;
    if kept.is_empty() {
        return Err(Error::DegenerateInput);
    }

    // Merge cocircular neighbors.
    let mut uf = UnionFind::new(kept.len());
    let mut edge_map: std::collections::HashMap<(usize, usize), Vec<usize>> =
        std::collections::HashMap::new();
    for (fi, f) in kept.iter().enumerate() {
        for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
            let key = (e.0.min(e.1), e.0.max(e.1));
            edge_map.entry(key).or_default().push(fi);
        }
    }
    for owners in edge_map.values() {
        if owners.len() == 2 {
            let (a, b) = (owners[0], owners[1]);
            let tol = 1e-9 * (1.0 + radii[a]);
            if (radii[a] - radii[b]).abs() <= tol && centers[a].approx_eq(&centers[b], tol) {
                uf.union(a, b);
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for fi in 0..kept.len() {
        groups.entry(uf.find(fi)).or_default().push(fi);
    }

    // Assemble polygonal cells: vertex ids ordered by angle around the
    // circumcenter.
    let mut cells = Vec::new();
    for (_, group) in groups {
        let rep = group[0];
        let center = centers[rep];
        let radius = radii[rep];
        let mut verts: Vec<usize> = group
            .iter()
            .flat_map(|&fi| kept[fi].iter().copied())
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let reference = geom::tangent_toward(&center, &points[verts[0]])?;
        let mut with_angle: Vec<(f64, usize)> = Vec::with_capacity(verts.len());
        for &v in &verts {
            let t = geom::tangent_toward(&center, &points[v])?;
            with_angle.push((geom::signed_tangent_angle(&center, reference, t), v));
        }
        with_angle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let ordered: Vec<usize> = with_angle.into_iter().map(|(_, v)| v).collect();
        cells.push(DelaunayCell {
            vertices: ordered,
            circumcenter: center,
            circumradius: radius,
            boundary_cell: false,
        });
    }
    // Deterministic cell order.
    cells.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    // Boundary flags from side-use counts.
    let mut side_use: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    for c in &cells {
        let k = c.vertices.len();
        for i in 0..k {
            let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
            *side_use.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    for c in &mut cells {
        let k = c.vertices.len();
        c.boundary_cell = (0..k).any(|i| {
            let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
            side_use[&(u.min(v), u.max(v))] == 1
        });
    }

    Ok(DelaunayDecomposition {
        geometry,
        points: points.to_vec(),
        cells,
    })
}

impl DelaunayDecomposition {
    /// Brute-force empty-circumdisk validation of every cell.
    pub fn verify_empty_circumdisks(&self) -> Result<()> {
        for (ci, cell) in self.cells.iter().enumerate() {
            for (pi, p) in self.points.iter().enumerate() {
                if cell.vertices.contains(&pi) {
                    continue;
                }
                let d = geom::distance(&cell.circumcenter, p)?;
                if d < cell.circumradius - PREDICATE_TOL {
                    return Err(Error::Decomposition(format!(
                        "point {pi} lies inside the circumdisk of cell {ci}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest circumradius over interior cells (all cells on the sphere).
    pub fn max_interior_circumradius(&self) -> Option<f64> {
        self.cells
            .iter()
            .filter(|c| !c.boundary_cell)
            .map(|c| c.circumradius)
            .fold(None, |m, r| Some(m.map_or(r, |m: f64| m.max(r))))
    }

    pub fn cell_polygon(&self, cell: &DelaunayCell) -> Vec<Point> {
        cell.vertices.iter().map(|&v| self.points[v]).collect()
    }

    /// Index of the side separating the cell from its circumcenter, if any.
    pub(crate) fn separating_side(&self, cell: &DelaunayCell) -> Result<Option<usize>> {
        let k = cell.vertices.len();
        let mut found = None;
        for i in 0..k {
            let u = &self.points[cell.vertices[i]];
            let v = &self.points[cell.vertices[(i + 1) % k]];
            let line = geom::line_through(u, v)?;
            let sc = geom::signed_offset(&line, &cell.circumcenter)?;
            // Reference side taken from the remaining vertices.
            let mut reference = 0.0f64;
            for (j, &w) in cell.vertices.iter().enumerate() {
                if j == i || j == (i + 1) % k {
                    continue;
                }
                let sw = geom::signed_offset(&line, &self.points[w])?;
                if sw.abs() > reference.abs() {
                    reference = sw;
                }
            }
            if sc * reference.signum() < -PREDICATE_TOL {
                if found.is_some() {
                    return Err(Error::Decomposition(
                        "cell has more than one separating side".into(),
                    ));
                }
                found = Some(i);
            }
        }
        Ok(found)
    }
}

/// Bridge surgery: replace every separating side by the path through the
/// owning cell's circumcenter. Separating sides on the hull boundary have
/// no neighbor to absorb the bridge and are left untouched (their cells are
/// flagged as boundary cells).
pub fn molnar(points: &[Point], geometry: Geometry) -> Result<MolnarDecomposition> {
    let dd = delaunay(points, geometry)?;
    let source_count = dd.points.len();
    let mut pool = dd.points.clone();

    let mut side_use: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    for c in &dd.cells {
        let k = c.vertices.len();
        for i in 0..k {
            let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
            *side_use.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    // Side key -> cell whose separating side it is.
    let mut side_owner: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut sep_side: Vec<Option<(usize, usize)>> = vec![None; dd.cells.len()];
    let mut unresolved: Vec<bool> = vec![false; dd.cells.len()];
    for (ci, c) in dd.cells.iter().enumerate() {
        if let Some(i) = dd.separating_side(c)? {
            let k = c.vertices.len();
            let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
            let key = (u.min(v), u.max(v));
            sep_side[ci] = Some((u, v));
            if side_use[&key] == 2 {
                side_owner.insert(key, ci);
            } else {
                // Hull edge: no neighbor to absorb the bridge.
                unresolved[ci] = true;
            }
        }
    }

    // A bridge may only cross sides that the surgery removes. Near the hull
    // (or after another demotion) a bridge arm can run into a side that
    // stays; such bridges are dropped, and dropping one can expose others,
    // so iterate to a fixed point.
    let all_sides: Vec<(usize, usize)> = side_use.keys().copied().collect();
    loop {
        let mut demote: Option<(usize, usize)> = None;
        'scan: for (&key, &ci) in &side_owner {
            let (a, b) = sep_side[ci].unwrap();
            let o = &dd.cells[ci].circumcenter;
            for arm_end in [a, b] {
                for &side in &all_sides {
                    if side_owner.contains_key(&side) {
                        continue;
                    }
                    let (u, v) = side;
                    if u == arm_end || v == arm_end {
                        continue;
                    }
                    let hits = geom::segment_intersections(
                        &dd.points[arm_end],
                        o,
                        &dd.points[u],
                        &dd.points[v],
                    )?;
                    for h in hits {
                        let at_endpoint = h.approx_eq(&dd.points[arm_end], 1e-7)
                            || h.approx_eq(o, 1e-7)
                            || h.approx_eq(&dd.points[u], 1e-7)
                            || h.approx_eq(&dd.points[v], 1e-7);
                        if !at_endpoint {
                            demote = Some((key.0, key.1));
                            break 'scan;
                        }
                    }
                }
            }
        }
        match demote {
            Some(key) => {
                let ci = side_owner.remove(&key).unwrap();
                unresolved[ci] = true;
            }
            None => break,
        }
    }

    let mut center_ids: Vec<Option<usize>> = vec![None; dd.cells.len()];
    let owners: std::collections::HashSet<usize> = side_owner.values().copied().collect();
    for ci in 0..dd.cells.len() {
        if owners.contains(&ci) {
            let id = pool.len();
            pool.push(dd.cells[ci].circumcenter);
            center_ids[ci] = Some(id);
        }
    }

    let mut bridges = Vec::new();
    let mut cells = Vec::new();
    for c in &dd.cells {
        let k = c.vertices.len();
        let mut boundary = Vec::with_capacity(k + 1);
        for i in 0..k {
            let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
            boundary.push(u);
            let key = (u.min(v), u.max(v));
            if let Some(&owner) = side_owner.get(&key) {
                boundary.push(center_ids[owner].unwrap());
            }
        }
        cells.push(MolnarRawCell {
            boundary,
            circumcenter: c.circumcenter,
            circumradius: c.circumradius,
            center_id: None,
            boundary_cell: c.boundary_cell,
            unresolved_separating_side: false,
        });
    }
    for (ci, id) in center_ids.iter().enumerate() {
        cells[ci].center_id = *id;
        cells[ci].unresolved_separating_side = unresolved[ci];
        if let Some(id) = id {
            // Recover the bridge endpoints for diagnostics and rendering.
            let b = cells[ci].boundary.clone();
            let k = b.len();
            let pos = b.iter().position(|&x| x == *id).unwrap();
            bridges.push((b[(pos + k - 1) % k], *id, b[(pos + 1) % k]));
        }
    }

    Ok(MolnarDecomposition {
        geometry,
        points: pool,
        source_count,
        cells,
        bridges,
    })
}

impl MolnarDecomposition {
    pub fn cell_polygon(&self, cell: &MolnarRawCell) -> Vec<Point> {
        cell.boundary.iter().map(|&v| self.points[v]).collect()
    }
}

/// Apex height of the isosceles triangle over a base chord of length `len`
/// whose circumradius equals `r` and which contains its circumcenter (the
/// taller of the two solutions).
fn tall_apex_height(geometry: Geometry, len: f64, r: f64) -> Option<f64> {
    let half = 0.5 * len;
    match geometry {
        Geometry::Euclidean => {
            if half > r {
                return None;
            }
            Some(r + (r * r - half * half).sqrt())
        }
        Geometry::Spherical => {
            let c = r.cos() / half.cos();
            if c.abs() > 1.0 {
                return None;
            }
            Some(c.acos() + r)
        }
        Geometry::Hyperbolic => {
            let c = r.cosh() / half.cosh();
            if c < 1.0 {
                return None;
            }
            Some(c.acosh() + r)
        }
    }
}

/// Refined decomposition: cells of small circumradius are kept whole as
/// type-1 cells (cocircular quadrangles split into two triangles along the
/// diagonal at the lexicographically smallest vertex); large cells are
/// fanned around their circumcenter, each fan piece either kept as a type-1
/// triangle, cut at the point where the inner triangle's circumradius
/// equals the saturation radius, or kept whole as a type-2 cell.
pub fn refine(m: &MolnarDecomposition, rho: f64) -> Result<Decomposition> {
    let geometry = m.geometry;
    let r_rho = formulas::saturation_radius(geometry, rho)?;

    // The refinement logic is only valid over packings: pairwise source
    // distances at least 2 rho.
    let src = &m.points[..m.source_count];
    for i in 0..src.len() {
        for j in i + 1..src.len() {
            let d = geom::distance(&src[i], &src[j])?;
            if d < 2.0 * rho - 1e-9 {
                return Err(Error::NotAPacking { i, j, distance: d });
            }
        }
    }
    // Saturation: interior cells must have circumradius at most 2 R_rho.
    for c in &m.cells {
        if !c.boundary_cell && c.circumradius > 2.0 * r_rho + 1e-9 {
            return Err(Error::NotSaturated {
                radius: c.circumradius,
                limit: 2.0 * r_rho,
            });
        }
    }

    let mut points = m.points.clone();
    let mut cells: Vec<MolnarCell> = Vec::new();

    for cell in &m.cells {
        if cell.circumradius <= r_rho + PREDICATE_TOL {
            // Small cells never carry bridge vertices in a packing: an
            // obtuse cell inscribed in a circle of radius <= R_rho would
            // need a side shorter than 2 rho.
            if cell.boundary.iter().any(|&v| v >= m.source_count) {
                return Err(Error::Decomposition(
                    "small cell with bridge vertices; input is not a packing".into(),
                ));
            }
            match cell.boundary.len() {
                3 => cells.push(MolnarCell {
                    kind: CellKind::Type1,
                    boundary: cell.boundary.clone(),
                    circumradius: Some(cell.circumradius),
                    generating_edge: None,
                    apex: None,
                    boundary_cell: cell.boundary_cell,
                }),
                4 => {
                    // Cocircular quadrangle: split along the diagonal at the
                    // lexicographically smallest vertex.
                    let b = &cell.boundary;
                    let lex = (0..4)
                        .min_by(|&i, &j| {
                            points[b[i]]
                                .coords
                                .partial_cmp(&points[b[j]].coords)
                                .unwrap()
                        })
                        .unwrap();
                    for tri in [
                        [b[lex], b[(lex + 1) % 4], b[(lex + 2) % 4]],
                        [b[lex], b[(lex + 2) % 4], b[(lex + 3) % 4]],
                    ] {
                        cells.push(MolnarCell {
                            kind: CellKind::Type1,
                            boundary: tri.to_vec(),
                            circumradius: Some(cell.circumradius),
                            generating_edge: None,
                            apex: None,
                            boundary_cell: cell.boundary_cell,
                        });
                    }
                }
                _ => {
                    return Err(Error::Decomposition(format!(
                        "type-1 cell with {} sides cannot arise from a packing",
                        cell.boundary.len()
                    )))
                }
            }
            continue;
        }

        // Large cell: fan around the circumcenter.
        let apex_id = match cell.center_id {
            Some(id) => id,
            None => {
                let id = points.len();
                points.push(cell.circumcenter);
                id
            }
        };
        if cell.unresolved_separating_side {
            // The circumcenter lies beyond a hull edge: no bridge absorbed
            // it, so the cell cannot be fanned around it. Keep the whole
            // (boundary) cell as one type-2 piece over its separating side.
            let side = {
                let k = cell.boundary.len();
                let mut found = (cell.boundary[0], cell.boundary[1]);
                for i in 0..k {
                    let (u, v) = (cell.boundary[i], cell.boundary[(i + 1) % k]);
                    let du = geom::distance(&points[apex_id], &points[u])?;
                    let dv = geom::distance(&points[apex_id], &points[v])?;
                    let line = geom::line_through(&points[u], &points[v])?;
                    let sc = geom::signed_offset(&line, &cell.circumcenter)?;
                    let mut reference = 0.0f64;
                    for &w in &cell.boundary {
                        if w != u && w != v {
                            let sw = geom::signed_offset(&line, &points[w])?;
                            if sw.abs() > reference.abs() {
                                reference = sw;
                            }
                        }
                    }
                    if sc * reference.signum() < -PREDICATE_TOL && (du - dv).abs() < 1e-9 {
                        found = (u, v);
                        break;
                    }
                }
                found
            };
            cells.push(MolnarCell {
                kind: CellKind::Type2,
                boundary: cell.boundary.clone(),
                circumradius: None,
                generating_edge: Some(side),
                apex: Some(apex_id),
                boundary_cell: true,
            });
            continue;
        }
        let b = &cell.boundary;
        let k = b.len();
        let mut i = 0;
        while i < k {
            let u = b[i];
            let w = b[(i + 1) % k];
            if u == apex_id || w == apex_id {
                // Own bridge: no fan piece over edges incident to the apex.
                i += 1;
                continue;
            }
            if w >= m.source_count {
                // Foreign circumcenter carved into this cell: the pair of
                // boundary edges (u, w), (w, v) spans one truncated piece.
                let v = b[(i + 2) % k];
                cells.push(MolnarCell {
                    kind: CellKind::Type2,
                    boundary: vec![apex_id, u, w, v],
                    circumradius: None,
                    generating_edge: Some((u, v)),
                    apex: Some(apex_id),
                    boundary_cell: cell.boundary_cell,
                });
                i += 2;
                continue;
            }
            // Uncarved original side (u, w).
            let pu = points[u];
            let pw = points[w];
            let len = geom::distance(&pu, &pw)?;
            let piece = geom::Triangle::new(points[apex_id], pu, pw)?;
            let keep_whole_type1 = match geom::circumcircle(&piece) {
                Ok((_, r)) => r <= r_rho + PREDICATE_TOL && geom::contains_circumcenter(&piece)?,
                Err(_) => false,
            };
            if keep_whole_type1 {
                let (_, r) = geom::circumcircle(&piece)?;
                cells.push(MolnarCell {
                    kind: CellKind::Type1,
                    boundary: vec![apex_id, u, w],
                    circumradius: Some(r),
                    generating_edge: None,
                    apex: None,
                    boundary_cell: cell.boundary_cell,
                });
                i += 1;
                continue;
            }
            let mid = geom::midpoint(&pu, &pw)?;
            let h_apex = geom::distance(&mid, &points[apex_id])?;
            let cut = match tall_apex_height(geometry, len, r_rho) {
                Some(h) if h <= h_apex - 1e-9 => Some(h),
                _ => None,
            };
            match cut {
                Some(h) => {
                    let vprime = geom::point_along(&mid, &points[apex_id], h)?;
                    let vprime_id = points.len();
                    points.push(vprime);
                    cells.push(MolnarCell {
                        kind: CellKind::Type1,
                        boundary: vec![vprime_id, u, w],
                        circumradius: Some(r_rho),
                        generating_edge: None,
                        apex: None,
                        boundary_cell: cell.boundary_cell,
                    });
                    cells.push(MolnarCell {
                        kind: CellKind::Type2,
                        boundary: vec![apex_id, u, vprime_id, w],
                        circumradius: None,
                        generating_edge: Some((u, w)),
                        apex: Some(apex_id),
                        boundary_cell: cell.boundary_cell,
                    });
                }
                None => {
                    // No admissible cut: the whole fan piece is a type-2
                    // cell with degenerate truncation at the base midpoint.
                    cells.push(MolnarCell {
                        kind: CellKind::Type2,
                        boundary: vec![apex_id, u, w],
                        circumradius: None,
                        generating_edge: Some((u, w)),
                        apex: Some(apex_id),
                        boundary_cell: cell.boundary_cell,
                    });
                }
            }
            i += 1;
        }
    }

    Ok(Decomposition {
        geometry,
        rho,
        saturation_radius: r_rho,
        points,
        source_count: m.source_count,
        cells,
    })
}

/// Whether the point set is saturated for disks of radius `rho`: no
/// interior Delaunay cell has circumradius above twice the saturation
/// radius (equivalently, no covered point is farther than `2 R_rho` from a
/// center). Sets too small or degenerate to decompose are unsaturated; when
/// every cell touches the hull boundary the check falls back to all cells.
pub fn saturation_check(points: &[Point], geometry: Geometry, rho: f64) -> Result<bool> {
    let r_rho = formulas::saturation_radius(geometry, rho)?;
    let dd = match delaunay(points, geometry) {
        Ok(dd) => dd,
        Err(Error::TooFewPoints { .. }) | Err(Error::DegenerateInput) => return Ok(false),
        Err(e) => return Err(e),
    };
    let max = dd.max_interior_circumradius().unwrap_or_else(|| {
        dd.cells
            .iter()
            .map(|c| c.circumradius)
            .fold(0.0, f64::max)
    });
    Ok(max <= 2.0 * r_rho + 1e-9)
}

impl Decomposition {
    pub fn cell_polygon(&self, cell: &MolnarCell) -> Vec<Point> {
        cell.boundary.iter().map(|&v| self.points[v]).collect()
    }

    /// Density of the packing in one cell: the disks around source-point
    /// vertices each meet the cell in a sector of the vertex angle, so the
    /// covered fraction is the angle sum at source vertices weighted by the
    /// sector area, over the cell area.
    pub fn cell_density(&self, cell: &MolnarCell) -> Result<f64> {
        let polygon = self.cell_polygon(cell);
        let area = geom::polygon_area(&polygon)?;
        if area < 1e-300 {
            return Err(Error::Decomposition("zero-area cell".into()));
        }
        let angles = geom::polygon_interior_angles(&polygon)?;
        let mut angle_sum = 0.0;
        for (pos, &vid) in cell.boundary.iter().enumerate() {
            if vid < self.source_count {
                angle_sum += angles[pos];
            }
        }
        Ok(self.geometry.sector_weight(self.rho) * angle_sum / area)
    }

    pub fn total_area(&self) -> Result<f64> {
        let mut sum = 0.0;
        for c in &self.cells {
            sum += geom::polygon_area(&self.cell_polygon(c))?;
        }
        Ok(sum)
    }

    /// Counts of how many cells use each undirected edge.
    pub fn edge_use_counts(&self) -> std::collections::HashMap<(usize, usize), usize> {
        let mut counts = std::collections::HashMap::new();
        for c in &self.cells {
            let k = c.boundary.len();
            for i in 0..k {
                let (u, v) = (c.boundary[i], c.boundary[(i + 1) % k]);
                *counts.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eu(pts: &[(f64, f64)]) -> Vec<Point> {
        pts.iter().map(|&(x, y)| Point::euclidean(x, y)).collect()
    }

    #[test]
    fn unit_square_is_one_cocircular_cell() {
        let pts = eu(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let dd = delaunay(&pts, Geometry::Euclidean).unwrap();
        assert_eq!(dd.cells.len(), 1);
        assert_eq!(dd.cells[0].vertices.len(), 4);
        assert!((dd.cells[0].circumradius - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(dd.cells[0]
            .circumcenter
            .approx_eq(&Point::euclidean(0.5, 0.5), 1e-12));
    }

    #[test]
    fn octahedron_has_eight_cells() {
        let mut pts = Vec::new();
        for s in [1.0, -1.0] {
            pts.push(Point::spherical([s, 0.0, 0.0]).unwrap());
            pts.push(Point::spherical([0.0, s, 0.0]).unwrap());
            pts.push(Point::spherical([0.0, 0.0, s]).unwrap());
        }
        let dd = delaunay(&pts, Geometry::Spherical).unwrap();
        assert_eq!(dd.cells.len(), 8);
        let expected = (1.0 / 3f64.sqrt()).acos();
        for c in &dd.cells {
            assert_eq!(c.vertices.len(), 3);
            assert!((c.circumradius - expected).abs() < 1e-10);
            assert!(!c.boundary_cell);
        }
        dd.verify_empty_circumdisks().unwrap();
    }

    #[test]
    fn random_points_have_empty_circumdisks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for geometry in [Geometry::Euclidean, Geometry::Hyperbolic] {
            // Greedy fill of a metric disk so no huge gaps remain and the
            // hull has no near-collinear slivers (whose hyperbolic
            // circumdisks would leave the model).
            let origin = Point::origin(geometry);
            let mut pts: Vec<Point> = Vec::new();
            for _ in 0..4000 {
                let x = rng.gen_range(-3.0..3.0);
                let y = rng.gen_range(-3.0..3.0);
                let p = match geometry {
                    Geometry::Euclidean => Point::euclidean(x, y),
                    _ => Point::hyperbolic_from_xy(x, y),
                };
                if geom::distance(&p, &origin).unwrap() > 2.4 {
                    continue;
                }
                if pts.iter().all(|q| geom::distance(&p, q).unwrap() > 0.5) {
                    pts.push(p);
                }
            }
            assert!(pts.len() > 30);
            let dd = delaunay(&pts, geometry).unwrap();
            dd.verify_empty_circumdisks().unwrap();
        }
        // Spherical: random unit vectors.
        let mut pts: Vec<Point> = Vec::new();
        while pts.len() < 50 {
            let v = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0f64),
            ];
            if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() < 0.2 {
                continue;
            }
            let p = Point::spherical_normalized(v).unwrap();
            if pts.iter().all(|q| geom::distance(&p, q).unwrap() > 0.05) {
                pts.push(p);
            }
        }
        let dd = delaunay(&pts, Geometry::Spherical).unwrap();
        dd.verify_empty_circumdisks().unwrap();
    }

    #[test]
    fn thin_kite_uses_the_short_diagonal() {
        // Four points forming a wide kite: the empty-circumdisk choice is
        // the vertical diagonal, and both cells contain their circumcenters,
        // so bridge surgery changes nothing.
        let pts = eu(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.3), (1.0, -0.3)]);
        let dd = delaunay(&pts, Geometry::Euclidean).unwrap();
        assert_eq!(dd.cells.len(), 2);
        for c in &dd.cells {
            assert!(c.vertices.contains(&2) && c.vertices.contains(&3));
            assert_eq!(dd.separating_side(c).unwrap(), None);
        }
        let m = molnar(&pts, Geometry::Euclidean).unwrap();
        assert!(m.bridges.is_empty());
        assert_eq!(m.points.len(), 4);
    }

    #[test]
    fn asymmetric_kite_produces_a_bridge() {
        // The flat triangle above the long diagonal has its circumcenter
        // far below the base: the shared side is its separating side.
        let pts = eu(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.3), (1.0, -5.0)]);
        let dd = delaunay(&pts, Geometry::Euclidean).unwrap();
        assert_eq!(dd.cells.len(), 2);
        let top = dd.cells.iter().find(|c| c.vertices.contains(&2)).unwrap();
        let side = dd.separating_side(top).unwrap().unwrap();
        let k = top.vertices.len();
        let (u, v) = (top.vertices[side], top.vertices[(side + 1) % k]);
        assert_eq!((u.min(v), u.max(v)), (0, 1));
        // Circumcenter of {(0,0), (2,0), (1, 0.3)} sits at y = -91/60.
        assert!(top
            .circumcenter
            .approx_eq(&Point::euclidean(1.0, -91.0 / 60.0), 1e-9));

        let m = molnar(&pts, Geometry::Euclidean).unwrap();
        assert_eq!(m.bridges.len(), 1);
        let (a, c, b) = m.bridges[0];
        assert_eq!((a.min(b), a.max(b)), (0, 1));
        assert!(m.points[c].approx_eq(&Point::euclidean(1.0, -91.0 / 60.0), 1e-9));
        // The carved bottom cell now has four boundary vertices, the grown
        // top cell four as well (side replaced by the two bridge edges).
        let sizes: Vec<usize> = m.cells.iter().map(|c| c.boundary.len()).collect();
        assert_eq!(sizes, vec![4, 4]);
    }

    #[test]
    fn hexagonal_patch_refines_to_regular_type1() {
        let mut pts = vec![Point::euclidean(0.0, 0.0)];
        for i in 0..6 {
            let a = i as f64 * std::f64::consts::FRAC_PI_3;
            pts.push(Point::euclidean(2.0 * a.cos(), 2.0 * a.sin()));
        }
        let m = molnar(&pts, Geometry::Euclidean).unwrap();
        assert!(m.bridges.is_empty());
        let refined = refine(&m, 1.0).unwrap();
        assert_eq!(refined.cells.len(), 6);
        for c in &refined.cells {
            assert_eq!(c.kind, CellKind::Type1);
            assert!((c.circumradius.unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
            let d = refined.cell_density(c).unwrap();
            assert!((d - std::f64::consts::PI / 12f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn square_grid_cells_split_into_type1_triangles() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                pts.push(Point::euclidean(2.0 * i as f64, 2.0 * j as f64));
            }
        }
        let dd = delaunay(&pts, Geometry::Euclidean).unwrap();
        assert_eq!(dd.cells.len(), 4);
        assert!(dd.cells.iter().all(|c| c.vertices.len() == 4));
        let m = molnar(&pts, Geometry::Euclidean).unwrap();
        let refined = refine(&m, 1.0).unwrap();
        assert_eq!(refined.cells.len(), 8);
        for c in &refined.cells {
            assert_eq!(c.kind, CellKind::Type1);
            assert!((c.circumradius.unwrap() - 2f64.sqrt()).abs() < 1e-12);
            // Right isosceles half-square: density pi/4 at rho = 1.
            let d = refined.cell_density(c).unwrap();
            assert!((d - std::f64::consts::PI / 4.0).abs() < 1e-12);
        }
        assert!(saturation_check(&pts, Geometry::Euclidean, 1.0).unwrap());
    }

    #[test]
    fn octahedron_saturation_and_area() {
        let mut pts = Vec::new();
        for s in [1.0, -1.0] {
            pts.push(Point::spherical([s, 0.0, 0.0]).unwrap());
            pts.push(Point::spherical([0.0, s, 0.0]).unwrap());
            pts.push(Point::spherical([0.0, 0.0, s]).unwrap());
        }
        assert!(
            saturation_check(&pts, Geometry::Spherical, std::f64::consts::FRAC_PI_4).unwrap()
        );
        let m = molnar(&pts, Geometry::Spherical).unwrap();
        let refined = refine(&m, std::f64::consts::FRAC_PI_4).unwrap();
        assert_eq!(refined.cells.len(), 8);
        let total = refined.total_area().unwrap();
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-8);
        for c in &refined.cells {
            let d = refined.cell_density(c).unwrap();
            assert!((d - 3.0 * (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn two_far_points_are_not_saturated() {
        let pts = eu(&[(0.0, 0.0), (20.0, 0.0), (10.0, 18.0)]);
        assert!(!saturation_check(&pts, Geometry::Euclidean, 1.0).unwrap());
    }

    #[test]
    fn stretched_kite_produces_type2_cells() {
        // A 4-point packing (rho = 1) whose top cell is obtuse with
        // circumradius above R_rho: its base is a separating side with the
        // bridge carved into the bottom cell, which also exceeds R_rho.
        let pts = eu(&[(0.0, 0.0), (3.0, 0.0), (1.5, 1.4), (1.5, -2.2)]);
        let dd = delaunay(&pts, Geometry::Euclidean).unwrap();
        dd.verify_empty_circumdisks().unwrap();
        let m = molnar(&pts, Geometry::Euclidean).unwrap();
        let refined = refine(&m, 1.0).unwrap();
        assert!(refined.cells.iter().any(|c| c.kind == CellKind::Type2));
        for c in &refined.cells {
            match c.kind {
                CellKind::Type1 => {
                    assert!(c.circumradius.unwrap() <= refined.saturation_radius + 1e-9);
                    assert_eq!(c.boundary.len(), 3);
                }
                CellKind::Type2 => {
                    let (i, j) = c.generating_edge.unwrap();
                    assert!(i < refined.source_count && j < refined.source_count);
                    let apex = c.apex.unwrap();
                    let di = geom::distance(&refined.points[apex], &refined.points[i]).unwrap();
                    let dj = geom::distance(&refined.points[apex], &refined.points[j]).unwrap();
                    assert!((di - dj).abs() < 1e-9, "apex equidistant");
                    if c.boundary.len() == 4 {
                        let vp = c.boundary[2];
                        let di = geom::distance(&refined.points[vp], &refined.points[i]).unwrap();
                        let dj = geom::distance(&refined.points[vp], &refined.points[j]).unwrap();
                        assert!((di - dj).abs() < 1e-9, "truncation equidistant");
                    }
                }
            }
        }
        // Area is conserved across bridge surgery and refinement.
        let dd_area: f64 = dd
            .cells
            .iter()
            .map(|c| geom::polygon_area(&dd.cell_polygon(c)).unwrap())
            .sum();
        let refined_area = refined.total_area().unwrap();
        assert!((dd_area - refined_area).abs() / dd_area < 1e-9);
    }

    #[test]
    fn hemisphere_cap_cluster_decomposes() {
        // Points inside one hemisphere: cells cover the spherical hull only.
        let mut pts = Vec::new();
        for (x, y) in [
            (0.0, 0.0),
            (0.5, 0.0),
            (0.0, 0.5),
            (-0.5, 0.1),
            (0.1, -0.5),
            (0.4, 0.4),
        ] {
            pts.push(Point::spherical_normalized([x, y, 1.0]).unwrap());
        }
        let dd = delaunay(&pts, Geometry::Spherical).unwrap();
        dd.verify_empty_circumdisks().unwrap();
        assert!(dd.cells.iter().any(|c| c.boundary_cell));
    }
}
