//! Building a surface from a triangulated polygon with optional side
//! identifications.

use super::{PolyTriangulation, Polygon};
use crate::error::{Error, Result};
use crate::surface::{build_surface, Pairing, SideRef, TriSurface, TriangleSpec};

/// Side `k` of the polygon runs from vertex `k` to vertex `k + 1`. Each
/// pair `(k, m)` glues side `k` to side `m` with opposite orientations, so
/// vertex `k` meets vertex `m + 1`. Unpaired sides become boundary.
///
/// Edge ids are assigned to the diagonals first, in sorted order, then to
/// the polygon sides by smallest side index.
pub fn surface_from_polygon(
    p: &Polygon,
    tri: &PolyTriangulation,
    identifications: &[(usize, usize)],
) -> Result<TriSurface> {
    let n = p.len();
    let triangles = tri.triangles(n);
    if triangles.len() != n - 2 {
        return Err(Error::InvalidPolygon(format!(
            "{} faces from {} diagonals; not a triangulation",
            triangles.len(),
            tri.diagonals().len()
        )));
    }

    let mut partner: Vec<Option<usize>> = vec![None; n];
    for &(k, m) in identifications {
        if k >= n || m >= n {
            return Err(Error::NonManifold(format!("side {} does not exist", k.max(m))));
        }
        if k == m {
            return Err(Error::NonManifold(format!("side {k} identified with itself")));
        }
        if partner[k].is_some() || partner[m].is_some() {
            return Err(Error::NonManifold(format!("side {} identified twice", if partner[k].is_some() { k } else { m })));
        }
        let len = |s: usize| (p.vertex((s + 1) % n) - p.vertex(s)).norm2();
        if len(k) != len(m) {
            return Err(Error::LengthMismatch {
                a: format!("side {k}"),
                b: format!("side {m}"),
            });
        }
        partner[k] = Some(m);
        partner[m] = Some(k);
    }

    // which triangle side carries the segment between two polygon vertices
    let find = |a: usize, b: usize| -> Vec<SideRef> {
        let mut out = Vec::new();
        for (t, tr) in triangles.iter().enumerate() {
            for s in 0..3 {
                let (x, y) = (tr[s], tr[(s + 1) % 3]);
                if (x, y) == (a, b) || (x, y) == (b, a) {
                    out.push(SideRef::new(t, s));
                }
            }
        }
        out
    };

    let mut pairings = Vec::with_capacity(n - 3 + n);
    for d in tri.diagonals() {
        match find(d.i, d.j)[..] {
            [x, y] => pairings.push(Pairing::Glue(x, y)),
            _ => return Err(Error::Internal(format!("diagonal {d} is not shared by two faces"))),
        }
    }
    let side = |k: usize| -> Result<SideRef> {
        find(k, (k + 1) % n)
            .first()
            .copied()
            .ok_or_else(|| Error::Internal(format!("polygon side {k} is in no face")))
    };
    for (k, other) in partner.iter().enumerate() {
        match *other {
            None => pairings.push(Pairing::Boundary(side(k)?)),
            Some(m) if k < m => pairings.push(Pairing::Glue(side(k)?, side(m)?)),
            Some(_) => {}
        }
    }

    let specs: Vec<TriangleSpec> = triangles
        .iter()
        .map(|tr| {
            let labels = tr.map(|v| p.labels()[v].as_str());
            let corners = tr.map(|v| p.vertex(v).clone());
            TriangleSpec::from_corners(labels, corners)
        })
        .collect();
    build_surface(&specs, &pairings)
}
