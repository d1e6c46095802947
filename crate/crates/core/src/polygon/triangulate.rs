//! Triangulation by corner cutting.
//!
//! Take the lowest-index corner A whose angle is below π, with neighbours
//! B and C. If BC is a diagonal, cut it off. Otherwise some vertex lies in
//! the closed triangle ABC; the one farthest from line BC sees A, so cut
//! along AD. Both pieces have fewer corners.

use super::{chord_is_valid, Diagonal, PolyTriangulation, Polygon};
use crate::error::{Error, Result};
use crate::geom::{orient2d, Point2, Sign};

pub fn triangulate(p: &Polygon) -> Result<PolyTriangulation> {
    let mut out = Vec::with_capacity(p.len().saturating_sub(3));
    let ring: Vec<usize> = (0..p.len()).collect();
    split(p.vertices(), ring, &mut out)?;
    Ok(PolyTriangulation::new(out))
}

fn cut(a: usize, b: usize) -> Diagonal {
    Diagonal { i: a.min(b), j: a.max(b) }
}

fn split(v: &[Point2], ring: Vec<usize>, out: &mut Vec<Diagonal>) -> Result<()> {
    let mut stack = vec![ring];
    while let Some(ring) = stack.pop() {
        let n = ring.len();
        if n <= 3 {
            continue;
        }
        let pts: Vec<&Point2> = ring.iter().map(|&k| &v[k]).collect();
        let pos = (0..n)
            .filter(|&k| orient2d(pts[(k + n - 1) % n], pts[k], pts[(k + 1) % n]) == Sign::Positive)
            .min_by_key(|&k| ring[k])
            .ok_or_else(|| Error::InvalidPolygon("no convex corner".into()))?;
        let (pb, pc) = ((pos + n - 1) % n, (pos + 1) % n);

        if chord_is_valid(&pts, pb, pc) {
            out.push(cut(ring[pb], ring[pc]));
            let rest: Vec<usize> = (0..n).filter(|&k| k != pos).map(|k| ring[k]).collect();
            stack.push(rest);
            continue;
        }

        let (a, b, c) = (pts[pos], pts[pb], pts[pc]);
        let bc = c - b;
        let mut best: Option<(usize, crate::geom::Scalar)> = None;
        for k in 0..n {
            if k == pos || k == pb || k == pc {
                continue;
            }
            let q = pts[k];
            let inside = orient2d(b, a, q) != Sign::Negative
                && orient2d(a, c, q) != Sign::Negative
                && orient2d(c, b, q) != Sign::Negative;
            if !inside {
                continue;
            }
            let dist = bc.cross(&(q - b)).abs();
            let better = match &best {
                None => true,
                Some((bk, bd)) => dist > *bd || (dist == *bd && ring[k] < ring[*bk]),
            };
            if better {
                best = Some((k, dist));
            }
        }
        let pd = best
            .map(|(k, _)| k)
            .ok_or_else(|| Error::Internal("corner with invalid base has empty triangle".into()))?;
        if !chord_is_valid(&pts, pos, pd) {
            return Err(Error::Internal(format!(
                "chord {}-{} is not a diagonal",
                ring[pos], ring[pd]
            )));
        }
        out.push(cut(ring[pos], ring[pd]));
        let (lo, hi) = (pos.min(pd), pos.max(pd));
        stack.push(ring[lo..=hi].to_vec());
        let mut other: Vec<usize> = ring[hi..].to_vec();
        other.extend_from_slice(&ring[..=lo]);
        stack.push(other);
    }
    Ok(())
}
