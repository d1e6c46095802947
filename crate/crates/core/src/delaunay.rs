//! Flip paths through Delaunay canonical forms.
//!
//! Any triangulation is flipped to a Delaunay one by repeatedly flipping
//! the lowest-numbered edge that fails the empty-circle test. Delaunay
//! triangulations of a surface differ only inside co-circular cells, so a
//! breadth-first search over flips of co-circular edges reaches all of
//! them; the one with the smallest certificate is the canonical form. Two
//! triangulations of the same surface share it, which yields a flip path:
//! go down from the source, then retrace the target's descent backwards.

use std::collections::{HashSet, VecDeque};

use crate::certificate::{canonical_labeling, certificate, Certificate};
use crate::error::{Error, Result};
use crate::flip::{develop_quad, flip, replay, FlipSequence};
use crate::geom::{incircle, Sign};
use crate::surface::{EdgeId, TriSurface};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct DelaunayOptions {
    /// Maximum number of flips in the descent; `None` means `10·E²`.
    pub iteration_cap: Option<usize>,
    /// Maximum number of distinct triangulations visited in a co-circular
    /// class.
    pub node_budget: usize,
}

impl Default for DelaunayOptions {
    fn default() -> Self {
        DelaunayOptions {
            iteration_cap: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DelaunayReport {
    /// Flips taking the input to `surface`.
    pub sequence: FlipSequence,
    pub canonical: Certificate,
    /// Interior edges of `surface` lying on a co-circular quadrilateral.
    pub degenerate_edge_count: usize,
    pub surface: TriSurface,
}

/// Incircle sign of the quadrilateral around `e`; positive means `e` is not
/// Delaunay.
pub fn edge_incircle_sign(s: &TriSurface, e: EdgeId) -> Result<Sign> {
    let q = develop_quad(s, e)?;
    incircle(&q.a, &q.b, &q.c, &q.d)
}

/// Signs of every interior edge that can be developed, by edge identifier.
/// Edges glued to their own triangle are skipped.
fn interior_signs(s: &TriSurface) -> Result<Vec<(EdgeId, Sign)>> {
    let mut out = Vec::new();
    for e in s.interior_edges() {
        match edge_incircle_sign(s, e) {
            Ok(sign) => out.push((e, sign)),
            Err(Error::SelfGluedEdge(_)) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

pub fn is_delaunay(s: &TriSurface) -> Result<bool> {
    Ok(interior_signs(s)?.iter().all(|&(_, sign)| sign != Sign::Positive))
}

fn degenerate_count(s: &TriSurface) -> Result<usize> {
    Ok(interior_signs(s)?
        .iter()
        .filter(|&&(_, sign)| sign == Sign::Zero)
        .count())
}

pub fn make_delaunay(s: &TriSurface) -> Result<DelaunayReport> {
    make_delaunay_with(s, &DelaunayOptions::default())
}

pub fn make_delaunay_with(s: &TriSurface, opts: &DelaunayOptions) -> Result<DelaunayReport> {
    let e = s.num_edges();
    let cap = opts.iteration_cap.unwrap_or(10 * e * e);
    let mut cur = s.clone();
    let mut sequence = FlipSequence::new();
    loop {
        let violating = interior_signs(&cur)?
            .into_iter()
            .find(|&(_, sign)| sign == Sign::Positive);
        let Some((edge, _)) = violating else { break };
        if sequence.len() >= cap {
            return Err(Error::IterationLimit { cap });
        }
        cur = match flip(&cur, edge) {
            Ok(next) => next,
            Err(Error::NotFlippable(_)) => return Err(Error::DelaunayAssertion(edge)),
            Err(err) => return Err(err),
        };
        sequence.push(edge);
    }
    Ok(DelaunayReport {
        sequence,
        canonical: certificate(&cur),
        degenerate_edge_count: degenerate_count(&cur)?,
        surface: cur,
    })
}

pub fn canonical_delaunay(s: &TriSurface) -> Result<DelaunayReport> {
    canonical_delaunay_with(s, &DelaunayOptions::default())
}

pub fn canonical_delaunay_with(s: &TriSurface, opts: &DelaunayOptions) -> Result<DelaunayReport> {
    let start = make_delaunay_with(s, opts)?;
    let mut best = (start.canonical.clone(), FlipSequence::new(), start.surface.clone());
    let mut seen: HashSet<Certificate> = HashSet::from([start.canonical.clone()]);
    let mut queue = VecDeque::from([(start.surface, FlipSequence::new())]);

    while let Some((cur, path)) = queue.pop_front() {
        for (e, sign) in interior_signs(&cur)? {
            if sign != Sign::Zero {
                continue;
            }
            let next = match flip(&cur, e) {
                Ok(next) => next,
                Err(Error::NotFlippable(_)) => continue,
                Err(err) => return Err(err),
            };
            let cert = certificate(&next);
            if !seen.insert(cert.clone()) {
                continue;
            }
            if seen.len() > opts.node_budget {
                return Err(Error::SearchBudget {
                    cap: opts.node_budget,
                });
            }
            let mut next_path = path.clone();
            next_path.push(e);
            if cert < best.0 {
                best = (cert, next_path.clone(), next.clone());
            }
            queue.push_back((next, next_path));
        }
    }

    let (canonical, bridge, surface) = best;
    Ok(DelaunayReport {
        sequence: start.sequence.concat(&bridge),
        canonical,
        degenerate_edge_count: degenerate_count(&surface)?,
        surface,
    })
}

pub fn flip_path(s: &TriSurface, t: &TriSurface) -> Result<FlipSequence> {
    flip_path_with(s, t, &DelaunayOptions::default())
}

/// A flip sequence taking `s` to a triangulation equal to `t`.
pub fn flip_path_with(s: &TriSurface, t: &TriSurface, opts: &DelaunayOptions) -> Result<FlipSequence> {
    if s.num_darts() != t.num_darts() || s.vertex_labels() != t.vertex_labels() {
        return Err(Error::NotSameSurface);
    }
    if certificate(s) == certificate(t) {
        return Ok(FlipSequence::new());
    }
    let down_s = canonical_delaunay_with(s, opts)?;
    let down_t = canonical_delaunay_with(t, opts)?;
    if down_s.canonical != down_t.canonical {
        return Err(Error::NotSameSurface);
    }
    // both canonical forms are isometric; translate t's edge names into s's
    let ls = canonical_labeling(&down_s.surface);
    let lt = canonical_labeling(&down_t.surface);
    let to_s = lt.edge_map(&down_t.surface, &ls, &down_s.surface);
    let climb: FlipSequence = down_t
        .sequence
        .reversed()
        .iter()
        .map(|e| to_s[&e])
        .collect();
    let path = cancel_pairs(down_s.sequence.concat(&climb));

    let end = replay(s, &path)?;
    if certificate(&end) != certificate(t) {
        return Err(Error::Internal("flip path does not reach its target".into()));
    }
    Ok(path)
}

/// Drops adjacent repeats `e, e`, which undo each other.
fn cancel_pairs(seq: FlipSequence) -> FlipSequence {
    let mut out: Vec<EdgeId> = Vec::with_capacity(seq.len());
    for e in seq.0 {
        if out.last() == Some(&e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    FlipSequence(out)
}
