//! Half-edge representation of a triangulated flat surface.
//!
//! Each triangle owns three consecutive darts `3t, 3t+1, 3t+2` in
//! counterclockwise order. A dart stores its displacement vector in the
//! triangle's own frame, so no global embedding exists and cone angles are
//! unrestricted. Glued darts are twins; unglued darts lie on the boundary.
//! Edge identifiers are shared by twins and survive flips.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{Point2, Scalar, Sign, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DartId(pub usize);

/// Stable edge identifier, shared by a dart and its twin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for EdgeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse()
            .map(EdgeId)
            .map_err(|_| Error::Parse(format!("invalid edge identifier `{s}`")))
    }
}

impl DartId {
    pub fn triangle(self) -> usize {
        self.0 / 3
    }

    pub fn side(self) -> usize {
        self.0 % 3
    }

    pub fn next(self) -> DartId {
        DartId(self.0 - self.0 % 3 + (self.0 + 1) % 3)
    }

    pub fn prev(self) -> DartId {
        DartId(self.0 - self.0 % 3 + (self.0 + 2) % 3)
    }

    pub fn of(triangle: usize, side: usize) -> DartId {
        DartId(3 * triangle + side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dart {
    pub(crate) edge: EdgeId,
    pub(crate) origin: Arc<str>,
    pub(crate) vector: Vec2,
    pub(crate) twin: Option<DartId>,
}

impl Dart {
    pub fn edge(&self) -> EdgeId {
        self.edge
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn vector(&self) -> &Vec2 {
        &self.vector
    }

    /// `None` for boundary darts.
    pub fn twin(&self) -> Option<DartId> {
        self.twin
    }
}

/// Side `side` of triangle `triangle`, running from corner `side` to
/// corner `side + 1 mod 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideRef {
    pub triangle: usize,
    pub side: usize,
}

impl SideRef {
    pub fn new(triangle: usize, side: usize) -> Self {
        SideRef { triangle, side }
    }

    fn dart(self) -> DartId {
        DartId::of(self.triangle, self.side)
    }
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.triangle, self.side)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    Glue(SideRef, SideRef),
    Boundary(SideRef),
}

/// One triangle as handed to [`build_surface`]: corner labels and the
/// three side vectors in a local frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSpec {
    pub labels: [String; 3],
    pub vectors: [Vec2; 3],
}

impl TriangleSpec {
    pub fn from_corners(labels: [&str; 3], corners: [Point2; 3]) -> Self {
        let vectors = [
            &corners[1] - &corners[0],
            &corners[2] - &corners[1],
            &corners[0] - &corners[2],
        ];
        TriangleSpec {
            labels: labels.map(str::to_owned),
            vectors,
        }
    }
}

/// A validated triangulated flat surface. Immutable; operations return new
/// values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriSurface {
    darts: Vec<Dart>,
    // edge id -> (first dart, twin) ordered by dart index
    edges: Vec<(DartId, Option<DartId>)>,
}

/// `V`, `E`, `F` and `χ = V - E + F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} chi={}",
            self.vertices, self.edges, self.faces, self.chi
        )
    }
}

/// The corners around one vertex, in rotational order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrbit {
    pub label: Arc<str>,
    /// Darts whose origin is this vertex; each stands for its corner.
    pub corners: Vec<DartId>,
    /// False when the orbit is a chain cut open by the boundary.
    pub interior: bool,
}

/// Builds and validates a surface. Edge identifiers are assigned in the
/// order of `pairings`.
pub fn build_surface(triangles: &[TriangleSpec], pairings: &[Pairing]) -> Result<TriSurface> {
    let n = triangles.len() * 3;
    let mut darts: Vec<Dart> = Vec::with_capacity(n);
    for spec in triangles {
        for side in 0..3 {
            darts.push(Dart {
                edge: EdgeId(usize::MAX),
                origin: Arc::from(spec.labels[side].as_str()),
                vector: spec.vectors[side].clone(),
                twin: None,
            });
        }
    }

    let mut seen = vec![false; n];
    let mut claim = |side: SideRef| -> Result<DartId> {
        if side.side > 2 || side.triangle >= triangles.len() {
            return Err(Error::NonManifold(format!("side {side} does not exist")));
        }
        let d = side.dart();
        if std::mem::replace(&mut seen[d.0], true) {
            return Err(Error::NonManifold(format!("side {side} is paired twice")));
        }
        Ok(d)
    };
    for (id, pairing) in pairings.iter().enumerate() {
        match *pairing {
            Pairing::Glue(a, b) => {
                let da = claim(a)?;
                let db = claim(b)?;
                darts[da.0].twin = Some(db);
                darts[db.0].twin = Some(da);
                darts[da.0].edge = EdgeId(id);
                darts[db.0].edge = EdgeId(id);
            }
            Pairing::Boundary(a) => {
                let da = claim(a)?;
                darts[da.0].edge = EdgeId(id);
            }
        }
    }
    if let Some(d) = seen.iter().position(|s| !s) {
        let d = DartId(d);
        return Err(Error::DanglingDart(
            SideRef::new(d.triangle(), d.side()).to_string(),
        ));
    }
    TriSurface::from_darts(darts)
}

impl TriSurface {
    /// Validates raw darts and indexes their edges. Edge identifiers must be
    /// exactly `0..E`.
    pub(crate) fn from_darts(darts: Vec<Dart>) -> Result<TriSurface> {
        if !darts.len().is_multiple_of(3) {
            return Err(Error::Internal("dart count is not a multiple of 3".into()));
        }
        let mut edges: Vec<Option<(DartId, Option<DartId>)>> = Vec::new();
        for (i, dart) in darts.iter().enumerate() {
            let e = dart.edge.0;
            if e >= darts.len() {
                return Err(Error::Internal(format!("edge identifier {e} out of range")));
            }
            if edges.len() <= e {
                edges.resize(e + 1, None);
            }
            match &mut edges[e] {
                slot @ None => *slot = Some((DartId(i), None)),
                Some((_, second @ None)) => *second = Some(DartId(i)),
                Some(_) => {
                    return Err(Error::NonManifold(format!(
                        "edge {e} is carried by more than two darts"
                    )))
                }
            }
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(e, slot)| {
                slot.ok_or_else(|| Error::Internal(format!("edge identifier {e} is unused")))
            })
            .collect::<Result<Vec<_>>>()?;

        let surface = TriSurface { darts, edges };
        surface.validate()?;
        Ok(surface)
    }

    fn validate(&self) -> Result<()> {
        let side_name = |d: DartId| SideRef::new(d.triangle(), d.side()).to_string();
        for t in 0..self.num_triangles() {
            let v = |k: usize| &self.darts[3 * t + k].vector;
            let sum = &(v(0) + v(1)) + v(2);
            if !sum.is_zero() {
                return Err(Error::Closure { triangle: t });
            }
            for k in 0..3 {
                if v(k).cross(v((k + 1) % 3)).sign() != Sign::Positive {
                    return Err(Error::Orientation {
                        triangle: t,
                        corner: (k + 1) % 3,
                    });
                }
            }
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let da = &self.darts[a.0];
            match (da.twin, b) {
                (None, None) => {}
                (Some(ta), Some(b)) if ta == b && self.darts[b.0].twin == Some(a) => {
                    if a == b {
                        return Err(Error::NonManifold(format!("side {} glued to itself", side_name(a))));
                    }
                    if da.vector.norm2() != self.darts[b.0].vector.norm2() {
                        return Err(Error::LengthMismatch {
                            a: side_name(a),
                            b: side_name(b),
                        });
                    }
                }
                _ => {
                    return Err(Error::NonManifold(format!(
                        "edge {e}: twin pointers are inconsistent"
                    )))
                }
            }
        }
        vertex_orbits(self)?;
        Ok(())
    }

    pub fn num_triangles(&self) -> usize {
        self.darts.len() / 3
    }

    pub fn num_darts(&self) -> usize {
        self.darts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d.0]
    }

    pub fn darts(&self) -> impl Iterator<Item = (DartId, &Dart)> + '_ {
        self.darts.iter().enumerate().map(|(i, d)| (DartId(i), d))
    }

    pub fn twin(&self, d: DartId) -> Option<DartId> {
        self.darts[d.0].twin
    }

    pub fn vector(&self, d: DartId) -> &Vec2 {
        &self.darts[d.0].vector
    }

    /// The darts carrying `e`; the second is `None` on the boundary.
    pub fn edge_darts(&self, e: EdgeId) -> Result<(DartId, Option<DartId>)> {
        self.edges.get(e.0).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn is_interior(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.0), Some((_, Some(_))))
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(|&e| self.is_interior(e))
    }

    pub fn boundary_darts(&self) -> Vec<DartId> {
        self.darts()
            .filter(|(_, d)| d.twin.is_none())
            .map(|(id, _)| id)
            .collect()
    }

    pub fn vertex_labels(&self) -> BTreeSet<&str> {
        self.darts.iter().map(|d| &*d.origin).collect()
    }

    /// Corner positions of triangle `t` with corner 0 placed at the origin.
    pub fn triangle_corners(&self, t: usize) -> [Point2; 3] {
        let a = Point2::origin();
        let b = &a + &self.darts[3 * t].vector;
        let c = &b + &self.darts[3 * t + 1].vector;
        [a, b, c]
    }

    pub fn counts(&self) -> Counts {
        // vertex orbits were checked when the surface was built
        let vertices = vertex_orbits(self).map(|o| o.len()).unwrap_or(0);
        let edges = self.edges.len();
        let faces = self.num_triangles();
        Counts {
            vertices,
            edges,
            faces,
            chi: vertices as i64 - edges as i64 + faces as i64,
        }
    }

    /// Exact total area.
    pub fn total_area(&self) -> Scalar {
        let mut twice = Scalar::zero();
        for t in 0..self.num_triangles() {
            twice += &self.darts[3 * t].vector.cross(&self.darts[3 * t + 1].vector);
        }
        &twice * &Scalar::ratio(1, 2)
    }

    pub(crate) fn raw_darts(&self) -> &[Dart] {
        &self.darts
    }
}

/// Groups corners into vertices by walking `d -> twin(prev(d))` around each
/// vertex. Boundary vertices give chains that start and stop at boundary
/// darts. Orbits are listed by their smallest corner.
pub fn vertex_orbits(s: &TriSurface) -> Result<Vec<VertexOrbit>> {
    let n = s.num_darts();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    let step = |d: DartId| s.twin(d.prev());
    let back = |d: DartId| s.twin(d).map(DartId::next);

    for start in 0..n {
        if seen[start] {
            continue;
        }
        // rewind to the head of the chain, or detect a full cycle
        let mut head = DartId(start);
        let mut interior = false;
        loop {
            match back(head) {
                None => break,
                Some(p) if p.0 == start => {
                    interior = true;
                    head = DartId(start);
                    break;
                }
                Some(p) => head = p,
            }
        }
        let mut corners = Vec::new();
        let mut cur = Some(head);
        while let Some(d) = cur {
            if seen[d.0] {
                break;
            }
            seen[d.0] = true;
            corners.push(d);
            cur = step(d);
        }
        let label = s.dart(head).origin.clone();
        for &d in &corners {
            let other = &s.dart(d).origin;
            if *other != label {
                return Err(Error::InconsistentLabel {
                    first: label.to_string(),
                    second: other.to_string(),
                });
            }
        }
        corners.sort();
        orbits.push(VertexOrbit {
            label,
            corners,
            interior,
        });
    }
    orbits.sort_by_key(|o| o.corners[0]);
    Ok(orbits)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::geom::Point2;

    pub fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    pub fn single_triangle() -> TriSurface {
        build_surface(
            &[TriangleSpec::from_corners(["a", "b", "c"], [pt(0, 0), pt(1, 0), pt(0, 1)])],
            &[
                Pairing::Boundary(SideRef::new(0, 0)),
                Pairing::Boundary(SideRef::new(0, 1)),
                Pairing::Boundary(SideRef::new(0, 2)),
            ],
        )
        .unwrap()
    }

    /// Unit square cut along (0,0)-(1,1), opposite sides glued.
    pub fn square_torus() -> TriSurface {
        let lower = TriangleSpec::from_corners(["p"; 3], [pt(0, 0), pt(1, 0), pt(1, 1)]);
        let upper = TriangleSpec::from_corners(["p"; 3], [pt(0, 0), pt(1, 1), pt(0, 1)]);
        build_surface(
            &[lower, upper],
            &[
                // diagonal
                Pairing::Glue(SideRef::new(0, 2), SideRef::new(1, 0)),
                // bottom with top
                Pairing::Glue(SideRef::new(0, 0), SideRef::new(1, 1)),
                // right with left
                Pairing::Glue(SideRef::new(0, 1), SideRef::new(1, 2)),
            ],
        )
        .unwrap()
    }

    /// Quadrilateral (0,0),(2,0),(2,1),(0,1) cut along (0,0)-(2,1).
    pub fn rectangle_quad() -> TriSurface {
        let lower = TriangleSpec::from_corners(["0", "1", "2"], [pt(0, 0), pt(2, 0), pt(2, 1)]);
        let upper = TriangleSpec::from_corners(["0", "2", "3"], [pt(0, 0), pt(2, 1), pt(0, 1)]);
        build_surface(
            &[lower, upper],
            &[
                Pairing::Glue(SideRef::new(0, 2), SideRef::new(1, 0)),
                Pairing::Boundary(SideRef::new(0, 0)),
                Pairing::Boundary(SideRef::new(0, 1)),
                Pairing::Boundary(SideRef::new(1, 1)),
                Pairing::Boundary(SideRef::new(1, 2)),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn single_triangle_counts() {
        let s = single_triangle();
        let c = s.counts();
        assert_eq!((c.vertices, c.edges, c.faces, c.chi), (3, 3, 1, 1));
        assert_eq!(s.boundary_darts().len(), 3);
        assert_eq!(s.total_area(), Scalar::ratio(1, 2));
    }

    #[test]
    fn square_torus_counts() {
        let s = square_torus();
        let c = s.counts();
        assert_eq!((c.vertices, c.edges, c.faces, c.chi), (1, 3, 2, 0));
        assert_eq!(s.interior_edges().count(), 3);
    }

    #[test]
    fn orbits() {
        let o = vertex_orbits(&single_triangle()).unwrap();
        assert_eq!(o.len(), 3);
        assert!(o.iter().all(|o| o.corners.len() == 1 && !o.interior));

        let o = vertex_orbits(&square_torus()).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].corners.len(), 6);
        assert!(o[0].interior);

        let o = vertex_orbits(&rectangle_quad()).unwrap();
        let mut sizes: Vec<_> = o.iter().map(|o| (o.label.to_string(), o.corners.len())).collect();
        sizes.sort();
        assert_eq!(
            sizes,
            vec![("0".into(), 2), ("1".into(), 1), ("2".into(), 2), ("3".into(), 1)]
        );
    }

    #[test]
    fn orbits_partition_corners() {
        for s in [single_triangle(), square_torus(), rectangle_quad()] {
            let mut all: Vec<_> = vertex_orbits(&s)
                .unwrap()
                .into_iter()
                .flat_map(|o| o.corners)
                .collect();
            all.sort();
            assert_eq!(all, (0..s.num_darts()).map(DartId).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rejects_length_mismatch() {
        let a = TriangleSpec::from_corners(["a"; 3], [pt(0, 0), pt(1, 0), pt(0, 1)]);
        let b = TriangleSpec::from_corners(["a"; 3], [pt(0, 0), pt(2, 0), pt(0, 1)]);
        let mut pairings = vec![Pairing::Glue(SideRef::new(0, 0), SideRef::new(1, 0))];
        for t in 0..2 {
            for k in 1..3 {
                pairings.push(Pairing::Boundary(SideRef::new(t, k)));
            }
        }
        assert!(matches!(
            build_surface(&[a, b], &pairings),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_triangles_and_pairings() {
        let all_boundary: Vec<_> = (0..3).map(|k| Pairing::Boundary(SideRef::new(0, k))).collect();

        let cw = TriangleSpec::from_corners(["a"; 3], [pt(0, 0), pt(0, 1), pt(1, 0)]);
        assert!(matches!(
            build_surface(&[cw], &all_boundary),
            Err(Error::Orientation { .. })
        ));

        let mut open = TriangleSpec::from_corners(["a"; 3], [pt(0, 0), pt(1, 0), pt(0, 1)]);
        open.vectors[2] = Vec2::from_ints(0, -2);
        assert!(matches!(
            build_surface(&[open], &all_boundary),
            Err(Error::Closure { .. })
        ));

        let ok = TriangleSpec::from_corners(["a", "b", "c"], [pt(0, 0), pt(1, 0), pt(0, 1)]);
        assert!(matches!(
            build_surface(std::slice::from_ref(&ok), &all_boundary[..2]),
            Err(Error::DanglingDart(_))
        ));
        let mut twice = all_boundary.clone();
        twice.push(Pairing::Boundary(SideRef::new(0, 1)));
        assert!(matches!(
            build_surface(std::slice::from_ref(&ok), &twice),
            Err(Error::NonManifold(_))
        ));
    }

    #[test]
    fn rejects_mixed_labels_in_one_vertex() {
        let lower = TriangleSpec::from_corners(["p", "p", "p"], [pt(0, 0), pt(1, 0), pt(1, 1)]);
        let upper = TriangleSpec::from_corners(["p", "q", "p"], [pt(0, 0), pt(1, 1), pt(0, 1)]);
        let err = build_surface(
            &[lower, upper],
            &[
                Pairing::Glue(SideRef::new(0, 2), SideRef::new(1, 0)),
                Pairing::Glue(SideRef::new(0, 0), SideRef::new(1, 1)),
                Pairing::Glue(SideRef::new(0, 1), SideRef::new(1, 2)),
            ],
        );
        assert!(matches!(err, Err(Error::InconsistentLabel { .. })));
    }
}
