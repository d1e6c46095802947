//! Exhaustive enumeration of triangulations.
//!
//! Triangulations of a polygon are exactly the maximal cliques of the
//! graph whose vertices are valid diagonals and whose edges join
//! non-crossing pairs. Cliques are listed with pivoted Bron–Kerbosch over
//! `u128` bitsets, which covers every polygon within the vertex budget.

use super::{Diagonal, PolyTriangulation, Polygon};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_VERTICES: usize = 14;

type Set = u128;

pub fn valid_diagonals(p: &Polygon) -> Vec<Diagonal> {
    let n = p.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let d = Diagonal { i, j };
            if p.is_valid_diagonal(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// All triangulations, sorted.
pub fn enumerate_triangulations(p: &Polygon) -> Result<Vec<PolyTriangulation>> {
    enumerate_with_budget(p, MAX_ENUMERATION_VERTICES)
}

pub fn enumerate_with_budget(p: &Polygon, max: usize) -> Result<Vec<PolyTriangulation>> {
    let n = p.len();
    if n > max.min(MAX_ENUMERATION_VERTICES) {
        return Err(Error::BudgetExceeded { n, max: max.min(MAX_ENUMERATION_VERTICES) });
    }
    let diags = valid_diagonals(p);
    debug_assert!(diags.len() <= Set::BITS as usize);
    let mut compat: Vec<Set> = vec![0; diags.len()];
    for a in 0..diags.len() {
        for b in a + 1..diags.len() {
            if matches!(p.intersection_number(&diags[a], &diags[b]), Ok(0)) {
                compat[a] |= 1 << b;
                compat[b] |= 1 << a;
            }
        }
    }
    let all: Set = if diags.is_empty() { 0 } else { Set::MAX >> (Set::BITS as usize - diags.len()) };
    let mut cliques = Vec::new();
    bron_kerbosch(&compat, 0, all, 0, &mut cliques);

    let mut out = Vec::with_capacity(cliques.len());
    for c in cliques {
        let chosen: Vec<Diagonal> = (0..diags.len()).filter(|&k| c >> k & 1 == 1).map(|k| diags[k]).collect();
        if chosen.len() != n - 3 {
            return Err(Error::Internal(format!(
                "maximal diagonal set of size {} in a {n}-gon",
                chosen.len()
            )));
        }
        out.push(PolyTriangulation::new(chosen));
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(adj: &[Set], r: Set, mut p: Set, mut x: Set, out: &mut Vec<Set>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let px = p | x;
    let pivot = bits(px).max_by_key(|&u| (p & adj[u]).count_ones()).expect("nonempty");
    for v in bits(p & !adj[pivot]) {
        let bit: Set = 1 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn bits(mut s: Set) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let k = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(k)
        }
    })
}
