//! Simple polygons and their geometric triangulations.
//!
//! A polygon is the genus-zero, connected-boundary case of a flat surface.
//! Everything here works on vertex indices into a single [`Polygon`];
//! geometry is only consulted through the exact predicates.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{on_open_segment, orient2d, segments_cross, Point2, Scalar, Sign};

mod crossing;
mod enumerate;
mod flip_graph;
mod glue;
mod triangulate;

pub use enumerate::{enumerate_triangulations, enumerate_with_budget, valid_diagonals, MAX_ENUMERATION_VERTICES};
pub use flip_graph::{build_flip_graph, build_flip_graph_with_budget, FlipGraph, MAX_FLIP_GRAPH_VERTICES};
pub use glue::surface_from_polygon;
pub use crossing::{check_crossing_pattern, verify_crossing_pattern, CrossingReport, CrossingSummary};
pub use triangulate::triangulate;

/// A simple polygon with vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    name: String,
    vertices: Vec<Point2>,
    labels: Vec<String>,
}

/// A chord between two non-adjacent vertices, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// The `n - 3` diagonals of a triangulation, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyTriangulation {
    diagonals: Vec<Diagonal>,
}

impl PolyTriangulation {
    pub fn new(mut diagonals: Vec<Diagonal>) -> Self {
        diagonals.sort();
        diagonals.dedup();
        PolyTriangulation { diagonals }
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.binary_search(d).is_ok()
    }

    /// The faces, each as a counterclockwise vertex triple `a < b < c`.
    pub fn triangles(&self, n: usize) -> Vec<[usize; 3]> {
        let mut adjacent = vec![vec![false; n]; n];
        let sides = (0..n).map(|k| (k, (k + 1) % n));
        let chords = self.diagonals.iter().map(|d| (d.i, d.j));
        for (a, b) in sides.chain(chords) {
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        // with no interior vertices every 3-cycle bounds a face
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !adjacent[a][b] {
                    continue;
                }
                out.extend((b + 1..n).filter(|&c| adjacent[b][c] && adjacent[a][c]).map(|c| [a, b, c]));
            }
        }
        out
    }
}

impl fmt::Display for PolyTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(Diagonal::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Closed segments `ab` and `cd` share at least one point.
fn closed_segments_meet(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
        return true;
    }
    let on = |p: &Point2, s: &Point2, t: &Point2| p == s || p == t || on_open_segment(p, s, t);
    (o1 == Sign::Zero && on(c, a, b))
        || (o2 == Sign::Zero && on(d, a, b))
        || (o3 == Sign::Zero && on(a, c, d))
        || (o4 == Sign::Zero && on(b, c, d))
}

/// Exact point location against a closed polygon ring.
pub(crate) fn locate(ring: &[&Point2], q: &Point2) -> Location {
    let n = ring.len();
    let mut inside = false;
    for k in 0..n {
        let (a, b) = (ring[k], ring[(k + 1) % n]);
        if q == a || on_open_segment(q, a, b) {
            return Location::Boundary;
        }
        let a_above = a.y > q.y;
        let b_above = b.y > q.y;
        if a_above != b_above {
            let o = orient2d(a, b, q);
            let upward = b.y > a.y;
            if (upward && o == Sign::Positive) || (!upward && o == Sign::Negative) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Validity of the chord between ring positions `i` and `j`: its open
/// segment avoids every vertex and edge and its midpoint is inside.
pub(crate) fn chord_is_valid(ring: &[&Point2], i: usize, j: usize) -> bool {
    let n = ring.len();
    if i == j || (i + 1) % n == j || (j + 1) % n == i {
        return false;
    }
    let (a, b) = (ring[i], ring[j]);
    for (k, v) in ring.iter().enumerate() {
        if k != i && k != j && on_open_segment(v, a, b) {
            return false;
        }
    }
    for k in 0..n {
        let l = (k + 1) % n;
        if k == i || k == j || l == i || l == j {
            continue;
        }
        if matches!(segments_cross(a, b, ring[k], ring[l]), Ok(1) | Err(_)) {
            return false;
        }
    }
    locate(ring, &a.midpoint(b)) == Location::Inside
}

impl Polygon {
    /// Validates simplicity, counterclockwise orientation and `n ≥ 3`.
    pub fn new(name: impl Into<String>, vertices: Vec<Point2>, labels: Vec<String>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices; need at least 3")));
        }
        if labels.len() != n {
            return Err(Error::InvalidPolygon("one label per vertex is required".into()));
        }
        for a in 0..n {
            for b in a + 1..n {
                if vertices[a] == vertices[b] {
                    return Err(Error::InvalidPolygon(format!("vertices {a} and {b} coincide")));
                }
            }
        }
        for k in 0..n {
            let (prev, cur, next) = (&vertices[(k + n - 1) % n], &vertices[k], &vertices[(k + 1) % n]);
            // adjacent edges folding back onto each other
            if orient2d(prev, cur, next) == Sign::Zero && (prev - cur).dot(&(next - cur)).sign() == Sign::Positive {
                return Err(Error::InvalidPolygon(format!("edges meeting at vertex {k} overlap")));
            }
        }
        for k in 0..n {
            for l in k + 1..n {
                let adjacent = l == k + 1 || (k == 0 && l == n - 1);
                if adjacent {
                    continue;
                }
                if closed_segments_meet(&vertices[k], &vertices[(k + 1) % n], &vertices[l], &vertices[(l + 1) % n]) {
                    return Err(Error::InvalidPolygon(format!("edges {k} and {l} intersect")));
                }
            }
        }
        let p = Polygon {
            name: name.into(),
            vertices,
            labels,
        };
        if p.twice_signed_area().sign() != Sign::Positive {
            return Err(Error::InvalidPolygon("vertices are not counterclockwise".into()));
        }
        Ok(p)
    }

    /// Labels default to the vertex indices.
    pub fn from_points(name: impl Into<String>, vertices: Vec<Point2>) -> Result<Self> {
        let labels = (0..vertices.len()).map(|k| k.to_string()).collect();
        Polygon::new(name, vertices, labels)
    }

    pub fn from_ints(name: impl Into<String>, coords: &[(i64, i64)]) -> Result<Self> {
        Polygon::from_points(name, coords.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> &Point2 {
        &self.vertices[k]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn twice_signed_area(&self) -> Scalar {
        let n = self.len();
        let origin = Point2::origin();
        let mut acc = Scalar::zero();
        for k in 0..n {
            let a = &self.vertices[k] - &origin;
            let b = &self.vertices[(k + 1) % n] - &origin;
            acc += &a.cross(&b);
        }
        acc
    }

    /// Every corner turns strictly left.
    pub fn is_strictly_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|k| {
            orient2d(&self.vertices[(k + n - 1) % n], &self.vertices[k], &self.vertices[(k + 1) % n])
                == Sign::Positive
        })
    }

    pub(crate) fn ring(&self) -> Vec<&Point2> {
        self.vertices.iter().collect()
    }

    /// A diagonal between vertices `a` and `b`, which must be distinct and
    /// non-adjacent. Geometric validity is a separate question.
    pub fn diagonal(&self, a: usize, b: usize) -> Result<Diagonal> {
        let n = self.len();
        let (i, j) = (a.min(b), a.max(b));
        if j >= n || i == j || j == i + 1 || (i == 0 && j == n - 1) {
            return Err(Error::InvalidDiagonal(a, b));
        }
        Ok(Diagonal { i, j })
    }

    pub fn is_valid_diagonal(&self, d: &Diagonal) -> bool {
        d.j < self.len() && chord_is_valid(&self.ring(), d.i, d.j)
    }

    /// Number of interior crossing points (0 or 1) of two valid diagonals.
    /// Identical diagonals have none.
    pub fn intersection_number(&self, a: &Diagonal, b: &Diagonal) -> Result<u8> {
        if a == b {
            return Ok(0);
        }
        let v = &self.vertices;
        segments_cross(&v[a.i], &v[a.j], &v[b.i], &v[b.j])
    }
}

/// Convenience alias mirroring [`Polygon::intersection_number`].
pub fn intersection_number(p: &Polygon, a: &Diagonal, b: &Diagonal) -> Result<u8> {
    p.intersection_number(a, b)
}


#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;

    #[test]
    fn rejects_bad_polygons() {
        assert!(Polygon::from_ints("two", &[(0, 0), (1, 0)]).is_err());
        assert!(Polygon::from_ints("cw", &[(0, 0), (0, 1), (1, 0)]).is_err());
        assert!(Polygon::from_ints("bowtie", &[(0, 0), (2, 2), (2, 0), (0, 2)]).is_err());
        assert!(Polygon::from_ints("flat", &[(0, 0), (1, 0), (2, 0)]).is_err());
        assert!(Polygon::from_ints("dup", &[(0, 0), (1, 0), (1, 1), (1, 0)]).is_err());
        assert!(Polygon::from_ints("spike", &[(0, 0), (2, 0), (1, 0), (1, 1)]).is_err());
        // touching at a vertex from a non-adjacent edge
        assert!(Polygon::from_ints("pinch", &[(0, 0), (4, 0), (2, 2), (4, 4), (0, 4), (2, 0)]).is_err());
    }

    #[test]
    fn straight_corners_are_allowed() {
        let p = Polygon::from_ints("tri4", &[(0, 0), (1, 0), (2, 0), (0, 2)]).unwrap();
        assert!(!p.is_strictly_convex());
        // (0,2) to (1,0) is the only valid diagonal
        assert!(p.is_valid_diagonal(&p.diagonal(1, 3).unwrap()));
        assert!(!p.is_valid_diagonal(&p.diagonal(0, 2).unwrap()));
    }

    #[test]
    fn diagonal_validity() {
        let q = convex_quad();
        assert!(q.is_valid_diagonal(&q.diagonal(0, 2).unwrap()));
        assert!(q.is_valid_diagonal(&q.diagonal(1, 3).unwrap()));

        let r = reflex_quad();
        assert!(r.is_valid_diagonal(&r.diagonal(0, 2).unwrap()));
        assert!(!r.is_valid_diagonal(&r.diagonal(1, 3).unwrap()));

        assert!(q.diagonal(0, 1).is_err());
        assert!(q.diagonal(3, 0).is_err());
        assert!(q.diagonal(2, 2).is_err());
        assert!(q.diagonal(1, 4).is_err());

        let l = lshape();
        // passes through the reflex vertex (1,1)
        assert!(!l.is_valid_diagonal(&l.diagonal(1, 5).unwrap()));
        // runs outside through the notch
        assert!(!l.is_valid_diagonal(&l.diagonal(2, 4).unwrap()));
        assert!(l.is_valid_diagonal(&l.diagonal(0, 3).unwrap()));
    }

    #[test]
    fn intersection_numbers() {
        let q = convex_quad();
        let (a, b) = (q.diagonal(0, 2).unwrap(), q.diagonal(1, 3).unwrap());
        assert_eq!(q.intersection_number(&a, &b).unwrap(), 1);

        let p = pentagon();
        let (a, b) = (p.diagonal(0, 2).unwrap(), p.diagonal(0, 3).unwrap());
        assert_eq!(intersection_number(&p, &a, &b).unwrap(), 0);

        let h = hexagon();
        let (a, b) = (h.diagonal(0, 2).unwrap(), h.diagonal(3, 5).unwrap());
        assert_eq!(h.intersection_number(&a, &b).unwrap(), 0);
        assert_eq!(h.intersection_number(&a, &a).unwrap(), 0);
    }

    #[test]
    fn point_location() {
        let q = convex_quad();
        let ring = q.ring();
        assert_eq!(locate(&ring, &Point2::new(Scalar::one(), Scalar::ratio(1, 2))), Location::Inside);
        assert_eq!(locate(&ring, &Point2::from_ints(1, 0)), Location::Boundary);
        assert_eq!(locate(&ring, &Point2::from_ints(2, 1)), Location::Boundary);
        assert_eq!(locate(&ring, &Point2::from_ints(3, 0)), Location::Outside);
        assert_eq!(locate(&ring, &Point2::from_ints(-1, 1)), Location::Outside);
    }

    #[test]
    fn faces_of_a_fan() {
        let p = pentagon();
        let t = PolyTriangulation::new(vec![p.diagonal(0, 3).unwrap(), p.diagonal(0, 2).unwrap()]);
        assert_eq!(t.diagonals()[0], p.diagonal(0, 2).unwrap());
        assert_eq!(t.triangles(5), vec![[0, 1, 2], [0, 2, 3], [0, 3, 4]]);
    }
}
