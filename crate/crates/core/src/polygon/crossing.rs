//! Crossing patterns between two triangulations of one polygon.
//!
//! Condition (i): every diagonal of `s` crosses every diagonal of `t`.
//! Condition (ii): some diagonal of `s` crosses each diagonal of `t`
//! exactly once. Together they force a strictly convex quadrilateral.

use std::collections::HashMap;

use super::enumerate::{enumerate_with_budget, valid_diagonals};
use super::{Diagonal, PolyTriangulation, Polygon};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub holds_i: bool,
    pub holds_ii: bool,
    /// The first diagonal of `s` satisfying (ii).
    pub witness: Option<Diagonal>,
}

pub fn check_crossing_pattern(p: &Polygon, s: &PolyTriangulation, t: &PolyTriangulation) -> Result<CrossingReport> {
    evaluate(s, t, |a, b| p.intersection_number(a, b))
}

fn evaluate(
    s: &PolyTriangulation,
    t: &PolyTriangulation,
    mut cross: impl FnMut(&Diagonal, &Diagonal) -> Result<u8>,
) -> Result<CrossingReport> {
    let mut table = Vec::with_capacity(s.diagonals().len());
    for a in s.diagonals() {
        let row = t.diagonals().iter().map(|b| cross(a, b)).collect::<Result<Vec<u8>>>()?;
        table.push(row);
    }
    let holds_i = table.iter().flatten().all(|&x| x >= 1);
    let witness = s
        .diagonals()
        .iter()
        .zip(&table)
        .find(|(_, row)| row.iter().all(|&x| x == 1))
        .map(|(a, _)| *a);
    Ok(CrossingReport {
        holds_i,
        holds_ii: witness.is_some(),
        witness,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingSummary {
    pub triangulations: usize,
    /// Ordered pairs of distinct triangulations examined.
    pub pairs: usize,
    pub holds_i: usize,
    pub holds_ii: usize,
    pub both: usize,
    /// Pairs satisfying both conditions although the polygon is not a
    /// strictly convex quadrilateral.
    pub counterexamples: Vec<(usize, usize)>,
}

impl CrossingSummary {
    pub fn line(&self) -> String {
        format!(
            "triangulations={} pairs={} holds_i={} holds_ii={} both={} counterexamples={}",
            self.triangulations,
            self.pairs,
            self.holds_i,
            self.holds_ii,
            self.both,
            self.counterexamples.len()
        )
    }
}

/// Checks every ordered pair of distinct triangulations of `p`.
pub fn verify_crossing_pattern(p: &Polygon, max_vertices: usize) -> Result<CrossingSummary> {
    let all = enumerate_with_budget(p, max_vertices)?;
    let diags = valid_diagonals(p);
    let mut crossings: HashMap<(Diagonal, Diagonal), u8> = HashMap::new();
    for a in &diags {
        for b in &diags {
            crossings.insert((*a, *b), p.intersection_number(a, b)?);
        }
    }
    let lookup = |a: &Diagonal, b: &Diagonal| {
        crossings
            .get(&(*a, *b))
            .copied()
            .ok_or_else(|| Error::Internal(format!("{a} or {b} is not a valid diagonal")))
    };
    let convex_quad = p.len() == 4 && p.is_strictly_convex();
    let mut out = CrossingSummary {
        triangulations: all.len(),
        ..Default::default()
    };
    for (a, s) in all.iter().enumerate() {
        for (b, t) in all.iter().enumerate() {
            if a == b {
                continue;
            }
            out.pairs += 1;
            let r = evaluate(s, t, lookup)?;
            out.holds_i += r.holds_i as usize;
            out.holds_ii += r.holds_ii as usize;
            if r.holds_i && r.holds_ii {
                out.both += 1;
                if !convex_quad {
                    out.counterexamples.push((a, b));
                }
            }
        }
    }
    Ok(out)
}
