//! Canonical certificates.
//!
//! A certificate is computed by running a breadth-first traversal of the
//! dart graph from every possible starting dart and keeping the smallest
//! emission. Only rotation-invariant data is emitted (vertex labels,
//! squared lengths, and the dot and cross product at each corner), so two
//! surfaces get the same certificate exactly when a label-preserving
//! combinatorial isomorphism matches all of that data.

use std::collections::BTreeMap;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::geom::Scalar;
use crate::surface::{DartId, EdgeId, TriSurface};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hexadecimal SHA-256 of the certificate bytes.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }
}

const BOUNDARY: u32 = u32::MAX;

type DartKey = (Arc<str>, Scalar, Scalar, Scalar);

fn dart_key(s: &TriSurface, d: DartId) -> DartKey {
    let out = s.vector(d);
    let back = -s.vector(d.prev());
    (
        s.dart(d).origin.clone(),
        out.norm2(),
        out.dot(&back),
        out.cross(&back),
    )
}

/// A certificate together with the dart order that produced it. Two
/// surfaces with equal certificates are isomorphic through
/// `a.order[k] <-> b.order[k]`.
#[derive(Clone, Debug)]
pub(crate) struct CanonicalLabeling {
    pub cert: Certificate,
    pub order: Vec<DartId>,
}

impl CanonicalLabeling {
    /// Edge correspondence `self -> other`, for labelings with equal
    /// certificates.
    pub fn edge_map(&self, s: &TriSurface, other: &CanonicalLabeling, t: &TriSurface) -> BTreeMap<EdgeId, EdgeId> {
        debug_assert_eq!(self.cert, other.cert);
        self.order
            .iter()
            .zip(&other.order)
            .map(|(&a, &b)| (s.dart(a).edge(), t.dart(b).edge()))
            .collect()
    }
}

/// Emission of one breadth-first traversal from `start`.
fn traverse(s: &TriSurface, codes: &[u32], start: DartId) -> (Vec<u32>, Vec<DartId>) {
    let mut visit: Vec<Option<u32>> = vec![None; s.num_triangles()];
    let mut entries = vec![start];
    visit[start.triangle()] = Some(0);
    let mut out = Vec::with_capacity(4 * s.num_darts());
    let mut order = Vec::with_capacity(s.num_darts());

    let mut i = 0;
    while i < entries.len() {
        let mut d = entries[i];
        for pos in 0..3u32 {
            let twin_ref = match s.twin(d) {
                None => BOUNDARY,
                Some(t) => {
                    let idx = *visit[t.triangle()].get_or_insert_with(|| {
                        entries.push(t);
                        (entries.len() - 1) as u32
                    });
                    let entry = entries[idx as usize];
                    let tpos = (t.side() + 3 - entry.side()) % 3;
                    3 * idx + tpos as u32
                }
            };
            out.extend_from_slice(&[i as u32, pos, codes[d.0], twin_ref]);
            order.push(d);
            d = d.next();
        }
        i += 1;
    }
    (out, order)
}

pub(crate) fn canonical_labeling(s: &TriSurface) -> CanonicalLabeling {
    let keys: Vec<DartKey> = (0..s.num_darts()).map(|i| dart_key(s, DartId(i))).collect();
    let mut table: Vec<&DartKey> = keys.iter().collect();
    table.sort();
    table.dedup();
    let codes: Vec<u32> = keys
        .iter()
        .map(|k| table.binary_search(&k).expect("key present") as u32)
        .collect();

    // connected components, as sets of triangles
    let mut component = vec![usize::MAX; s.num_triangles()];
    let mut roots = Vec::new();
    for t in 0..s.num_triangles() {
        if component[t] != usize::MAX {
            continue;
        }
        let c = roots.len();
        roots.push(t);
        let mut stack = vec![t];
        component[t] = c;
        while let Some(u) = stack.pop() {
            for k in 0..3 {
                if let Some(tw) = s.twin(DartId::of(u, k)) {
                    if component[tw.triangle()] == usize::MAX {
                        component[tw.triangle()] = c;
                        stack.push(tw.triangle());
                    }
                }
            }
        }
    }

    let mut best: Vec<(Vec<u32>, Vec<DartId>)> = vec![(Vec::new(), Vec::new()); roots.len()];
    for d in 0..s.num_darts() {
        let c = component[d / 3];
        let (emission, order) = traverse(s, &codes, DartId(d));
        if best[c].0.is_empty() || emission < best[c].0 {
            best[c] = (emission, order);
        }
    }
    best.sort();

    let mut bytes = Vec::new();
    bytes.extend_from_slice(b"flipflat-cert-1\n");
    bytes.extend_from_slice(format!("keys {}\n", table.len()).as_bytes());
    for (label, len2, dot, cross) in &table {
        bytes.extend_from_slice(
            format!("{}:{} {len2} {dot} {cross}\n", label.len(), label).as_bytes(),
        );
    }
    bytes.extend_from_slice(format!("components {}\n", best.len()).as_bytes());
    let mut order = Vec::with_capacity(s.num_darts());
    for (emission, o) in best {
        bytes.extend_from_slice(&(emission.len() as u32).to_be_bytes());
        for x in emission {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
        order.extend(o);
    }
    CanonicalLabeling {
        cert: Certificate(bytes),
        order,
    }
}

pub fn certificate(s: &TriSurface) -> Certificate {
    canonical_labeling(s).cert
}

pub fn equals(s: &TriSurface, t: &TriSurface) -> bool {
    s.num_darts() == t.num_darts() && certificate(s) == certificate(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Point2, Rotation, Vec2};
    use crate::surface::fixtures::*;
    use crate::surface::{build_surface, Pairing, SideRef, TriangleSpec};

    /// Square torus with triangles listed in the other order.
    fn square_torus_swapped() -> TriSurface {
        // lower starts at (1,0): side 0 right, side 1 diagonal, side 2 bottom
        let lower = TriangleSpec::from_corners(["p"; 3], [pt(1, 0), pt(1, 1), pt(0, 0)]);
        let upper = TriangleSpec::from_corners(["p"; 3], [pt(0, 0), pt(1, 1), pt(0, 1)]);
        build_surface(
            &[upper, lower],
            &[
                Pairing::Glue(SideRef::new(1, 2), SideRef::new(0, 1)),
                Pairing::Glue(SideRef::new(1, 0), SideRef::new(0, 2)),
                Pairing::Glue(SideRef::new(1, 1), SideRef::new(0, 0)),
            ],
        )
        .unwrap()
    }

    fn rotated(s: &TriSurface, r: &Rotation) -> TriSurface {
        let mut darts = s.raw_darts().to_vec();
        for d in &mut darts {
            d.vector = r.apply(&d.vector);
        }
        TriSurface::from_darts(darts).unwrap()
    }

    #[test]
    fn invariant_under_reordering() {
        assert_eq!(certificate(&square_torus()), certificate(&square_torus_swapped()));
    }

    #[test]
    fn invariant_under_frame_rotation() {
        // (3/5, 4/5) rotation
        let r = Rotation::aligning(
            &Vec2::from_ints(5, 0),
            &Vec2::from_ints(3, 4),
        )
        .unwrap();
        for s in [square_torus(), rectangle_quad(), single_triangle()] {
            assert_eq!(certificate(&s), certificate(&rotated(&s, &r)));
        }
    }

    #[test]
    fn distinguishes_surfaces() {
        assert_ne!(certificate(&square_torus()), certificate(&single_triangle()));
        assert!(!equals(&square_torus(), &single_triangle()));
        assert!(equals(&square_torus(), &square_torus()));
    }

    #[test]
    fn labels_matter() {
        let a = single_triangle();
        let b = build_surface(
            &[TriangleSpec::from_corners(
                ["a", "b", "d"],
                [Point2::from_ints(0, 0), pt(1, 0), pt(0, 1)],
            )],
            &(0..3).map(|k| Pairing::Boundary(SideRef::new(0, k))).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(!equals(&a, &b));
    }

    #[test]
    fn mirror_image_differs() {
        // a scalene triangle and its reflection are not related by a rotation
        let boundary: Vec<_> = (0..3).map(|k| Pairing::Boundary(SideRef::new(0, k))).collect();
        let a = build_surface(
            &[TriangleSpec::from_corners(["x"; 3], [pt(0, 0), pt(3, 0), pt(1, 2)])],
            &boundary,
        )
        .unwrap();
        let b = build_surface(
            &[TriangleSpec::from_corners(["x"; 3], [pt(0, 0), pt(3, 0), pt(2, 2)])],
            &boundary,
        )
        .unwrap();
        assert!(!equals(&a, &b));
    }

    #[test]
    fn isomorphism_order_matches_edges() {
        let a = canonical_labeling(&square_torus());
        let s2 = square_torus_swapped();
        let b = canonical_labeling(&s2);
        assert_eq!(a.cert, b.cert);
        let map = a.edge_map(&square_torus(), &b, &s2);
        assert_eq!(map.len(), 3);
    }
}
