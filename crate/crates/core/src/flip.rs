//! Edge flips.
//!
//! The two triangles on either side of an interior edge are developed into
//! the frame of the first one; the edge can be flipped when the resulting
//! quadrilateral is strictly convex at both endpoints of the edge.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{orient2d, Point2, Rotation, Sign};
use crate::surface::{Dart, DartId, EdgeId, TriSurface};

/// The quadrilateral around an interior edge, laid out in the frame of the
/// edge's first dart `d`: `a = origin(d)`, `b = a + vector(d)`, `c` is the
/// apex of `d`'s triangle and `d` the apex of the twin's triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevelopedQuad {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    pub d: Point2,
    pub(crate) dart: DartId,
    pub(crate) twin: DartId,
    /// Maps vectors of the twin's triangle into the dart's frame.
    pub(crate) transition: Rotation,
}

impl DevelopedQuad {
    /// Strict convexity at `a` and `b`; convexity at `c` and `d` holds by
    /// triangle orientation.
    pub fn is_strictly_convex(&self) -> bool {
        orient2d(&self.c, &self.a, &self.d) == Sign::Positive
            && orient2d(&self.d, &self.b, &self.c) == Sign::Positive
    }
}

fn develop_from(s: &TriSurface, e: EdgeId, dart: DartId) -> Result<DevelopedQuad> {
    let twin = s.twin(dart).ok_or(Error::BoundaryEdge(e))?;
    if twin.triangle() == dart.triangle() {
        return Err(Error::SelfGluedEdge(e));
    }
    let transition = Rotation::aligning(s.vector(twin), &-s.vector(dart))?;
    let a = Point2::origin();
    let b = &a + s.vector(dart);
    let c = &b + s.vector(dart.next());
    let d = &a + &transition.apply(s.vector(twin.next()));
    Ok(DevelopedQuad {
        a,
        b,
        c,
        d,
        dart,
        twin,
        transition,
    })
}

pub fn develop_quad(s: &TriSurface, e: EdgeId) -> Result<DevelopedQuad> {
    let (first, _) = s.edge_darts(e)?;
    develop_from(s, e, first)
}

/// Same as [`develop_quad`] but laid out from the other dart of `e`.
pub fn develop_quad_from_twin(s: &TriSurface, e: EdgeId) -> Result<DevelopedQuad> {
    let (_, second) = s.edge_darts(e)?;
    develop_from(s, e, second.ok_or(Error::BoundaryEdge(e))?)
}

pub fn is_flippable(s: &TriSurface, e: EdgeId) -> Result<bool> {
    Ok(develop_quad(s, e)?.is_strictly_convex())
}

/// Replaces `e` by the other diagonal of its quadrilateral. The new diagonal
/// keeps the identifier `e`; every other edge keeps its identifier and
/// pairing.
pub fn flip(s: &TriSurface, e: EdgeId) -> Result<TriSurface> {
    let quad = develop_quad(s, e)?;
    if !quad.is_strictly_convex() {
        return Err(Error::NotFlippable(e));
    }
    let (d0, t0) = (quad.dart, quad.twin);
    let (d1, d2) = (d0.next(), d0.prev());
    let (t1, t2) = (t0.next(), t0.prev());
    let (first, second) = (d0.triangle(), t0.triangle());

    // old outer dart -> new slot
    let remap = |x: DartId| -> DartId {
        if x == t1 {
            DartId::of(first, 0)
        } else if x == d2 {
            DartId::of(first, 2)
        } else if x == t2 {
            DartId::of(second, 0)
        } else if x == d1 {
            DartId::of(second, 1)
        } else {
            x
        }
    };
    let old = s.raw_darts();
    let moved = |x: DartId, rotate: bool| -> Dart {
        let src = &old[x.0];
        Dart {
            edge: src.edge,
            origin: src.origin.clone(),
            vector: if rotate {
                quad.transition.apply(&src.vector)
            } else {
                src.vector.clone()
            },
            twin: src.twin.map(remap),
        }
    };

    let diag = DartId::of(first, 1);
    let diag_twin = DartId::of(second, 2);
    let mut darts: Vec<Dart> = old
        .iter()
        .map(|dart| Dart {
            twin: dart.twin.map(remap),
            ..dart.clone()
        })
        .collect();
    // (A, D, C)
    darts[3 * first] = moved(t1, true);
    darts[3 * first + 1] = Dart {
        edge: e,
        origin: old[t2.0].origin.clone(),
        vector: &quad.c - &quad.d,
        twin: Some(diag_twin),
    };
    darts[3 * first + 2] = moved(d2, false);
    // (D, B, C)
    darts[3 * second] = moved(t2, true);
    darts[3 * second + 1] = moved(d1, false);
    darts[3 * second + 2] = Dart {
        edge: e,
        origin: old[d2.0].origin.clone(),
        vector: &quad.d - &quad.c,
        twin: Some(diag),
    };
    TriSurface::from_darts(darts)
}

/// Ordered list of edges to flip.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlipSequence(pub Vec<EdgeId>);

impl FlipSequence {
    pub fn new() -> Self {
        FlipSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, e: EdgeId) {
        self.0.push(e);
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    /// The sequence that undoes this one.
    pub fn reversed(&self) -> FlipSequence {
        FlipSequence(self.0.iter().rev().copied().collect())
    }

    pub fn concat(mut self, other: &FlipSequence) -> FlipSequence {
        self.0.extend_from_slice(&other.0);
        self
    }
}

/// One identifier per line.
impl fmt::Display for FlipSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// One identifier per line; blank lines and `#` comments are ignored.
impl FromStr for FlipSequence {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let mut seq = FlipSequence::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let e = line.parse().map_err(|_| Error::ParseLine {
                line: i + 1,
                msg: format!("expected an edge identifier, found `{line}`"),
            })?;
            seq.push(e);
        }
        Ok(seq)
    }
}

impl FromIterator<EdgeId> for FlipSequence {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        FlipSequence(iter.into_iter().collect())
    }
}

pub fn replay(s: &TriSurface, seq: &FlipSequence) -> Result<TriSurface> {
    let mut cur = s.clone();
    for (index, edge) in seq.iter().enumerate() {
        cur = flip(&cur, edge).map_err(|source| Error::Replay {
            index,
            edge,
            source: Box::new(source),
        })?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::equals;
    use crate::geom::{Scalar, Vec2};
    use crate::surface::fixtures::*;
    use crate::surface::{build_surface, Pairing, SideRef, TriangleSpec};

    fn diagonal_of(s: &TriSurface) -> EdgeId {
        // fixtures list the diagonal first
        let e = EdgeId(0);
        assert!(s.is_interior(e));
        e
    }

    fn quad_points(q: &DevelopedQuad) -> Vec<Point2> {
        vec![q.a.clone(), q.b.clone(), q.c.clone(), q.d.clone()]
    }

    #[test]
    fn square_torus_develops_to_the_unit_square() {
        let s = square_torus();
        let q = develop_quad(&s, diagonal_of(&s)).unwrap();
        // d = lower triangle's diagonal dart (1,1)->(0,0); translate by (1,1)
        let shift = Vec2::from_ints(1, 1);
        let pts: Vec<Point2> = quad_points(&q).iter().map(|p| p + &shift).collect();
        assert_eq!(pts, vec![pt(1, 1), pt(0, 0), pt(1, 0), pt(0, 1)]);
        assert!(q.is_strictly_convex());
    }

    #[test]
    fn rectangle_quad_apices_straddle_the_diagonal() {
        let s = rectangle_quad();
        let q = develop_quad(&s, EdgeId(0)).unwrap();
        let shift = Vec2::from_ints(2, 1);
        let pts: Vec<Point2> = quad_points(&q).iter().map(|p| p + &shift).collect();
        // a=(2,1), b=(0,0), c=(2,0), d=(0,1)
        assert_eq!(pts, vec![pt(2, 1), pt(0, 0), pt(2, 0), pt(0, 1)]);
        assert_eq!(orient2d(&q.a, &q.b, &q.c), Sign::Positive);
        assert_eq!(orient2d(&q.b, &q.a, &q.d), Sign::Positive);
    }

    #[test]
    fn boundary_edge_cannot_be_developed() {
        let s = single_triangle();
        for e in s.edge_ids() {
            assert!(matches!(develop_quad(&s, e), Err(Error::BoundaryEdge(_))));
            assert!(matches!(flip(&s, e), Err(Error::BoundaryEdge(_))));
        }
        assert!(matches!(develop_quad(&s, EdgeId(7)), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn rectangle_flip_gives_other_diagonal() {
        let s = rectangle_quad();
        let f = flip(&s, EdgeId(0)).unwrap();
        let (d, _) = f.edge_darts(EdgeId(0)).unwrap();
        assert_eq!(f.vector(d).norm2(), Scalar::from_int(5));
        let mut ends = vec![f.dart(d).origin().to_string(), f.dart(d.next()).origin().to_string()];
        ends.sort();
        assert_eq!(ends, vec!["1", "3"]);
        assert_eq!(f.counts(), s.counts());
        assert_eq!(f.total_area(), s.total_area());
    }

    #[test]
    fn square_torus_flip_is_isometric() {
        let s = square_torus();
        let f = flip(&s, EdgeId(0)).unwrap();
        let (d, _) = f.edge_darts(EdgeId(0)).unwrap();
        let v = f.vector(d);
        assert_eq!(v.norm2(), Scalar::from_int(2));
        assert!(equals(&s, &f));
    }

    /// Quadrilateral (0,0),(2,0),(1/2,1/2),(0,2) with its only valid
    /// diagonal (0,0)-(1/2,1/2).
    fn reflex_quad() -> TriSurface {
        let h = Point2::new(Scalar::ratio(1, 2), Scalar::ratio(1, 2));
        let a = TriangleSpec::from_corners(["0", "1", "2"], [pt(0, 0), pt(2, 0), h.clone()]);
        let b = TriangleSpec::from_corners(["0", "2", "3"], [pt(0, 0), h, pt(0, 2)]);
        build_surface(
            &[a, b],
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

    #[test]
    fn reflex_quad_is_not_flippable() {
        let s = reflex_quad();
        assert!(!is_flippable(&s, EdgeId(0)).unwrap());
        assert!(matches!(flip(&s, EdgeId(0)), Err(Error::NotFlippable(_))));
        // verdict agrees from the other side
        assert!(!develop_quad_from_twin(&s, EdgeId(0)).unwrap().is_strictly_convex());
    }

    #[test]
    fn straight_corner_is_not_flippable() {
        // diagonal (0,0)-(1,1); the apices (2,0) and (0,2) are collinear
        // with (1,1)
        let a = TriangleSpec::from_corners(["a", "b", "c"], [pt(0, 0), pt(2, 0), pt(1, 1)]);
        let b = TriangleSpec::from_corners(["a", "c", "d"], [pt(0, 0), pt(1, 1), pt(0, 2)]);
        let s = build_surface(
            &[a, b],
            &[
                Pairing::Glue(SideRef::new(0, 2), SideRef::new(1, 0)),
                Pairing::Boundary(SideRef::new(0, 0)),
                Pairing::Boundary(SideRef::new(0, 1)),
                Pairing::Boundary(SideRef::new(1, 1)),
                Pairing::Boundary(SideRef::new(1, 2)),
            ],
        )
        .unwrap();
        assert!(!is_flippable(&s, EdgeId(0)).unwrap());
    }

    #[test]
    fn flips_are_involutions() {
        for s in [square_torus(), rectangle_quad()] {
            for e in s.interior_edges().collect::<Vec<_>>() {
                if is_flippable(&s, e).unwrap() {
                    let back = flip(&flip(&s, e).unwrap(), e).unwrap();
                    assert!(equals(&back, &s));
                    // identifier reuse restores the exact labeled state
                    assert_eq!(back.counts(), s.counts());
                }
            }
        }
    }

    #[test]
    fn replay_sequences() {
        let s = square_torus();
        assert!(equals(&replay(&s, &FlipSequence::new()).unwrap(), &s));
        let seq: FlipSequence = [EdgeId(0), EdgeId(0)].into_iter().collect();
        assert!(equals(&replay(&s, &seq).unwrap(), &s));

        let walk: FlipSequence = [EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(0)].into_iter().collect();
        let there = replay(&s, &walk).unwrap();
        let back = replay(&there, &walk.reversed()).unwrap();
        assert!(equals(&back, &s));

        let err = replay(&reflex_quad(), &[EdgeId(0)].into_iter().collect()).unwrap_err();
        assert!(matches!(err, Error::Replay { index: 0, .. }));
    }

    #[test]
    fn flip_sequence_text() {
        let seq: FlipSequence = "# path\n3\n\n 1 # again\n4\n".parse().unwrap();
        assert_eq!(seq.0, vec![EdgeId(3), EdgeId(1), EdgeId(4)]);
        assert_eq!(seq.to_string(), "3\n1\n4\n");
        assert!("1\nx\n".parse::<FlipSequence>().is_err());
    }
}
