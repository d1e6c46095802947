//! The flip graph of a polygon's triangulations.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use super::enumerate::enumerate_with_budget;
use super::{Diagonal, PolyTriangulation, Polygon};
use crate::error::Result;
use crate::geom::{orient2d, Sign};

pub const MAX_FLIP_GRAPH_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipGraph {
    pub nodes: Vec<PolyTriangulation>,
    /// Pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
    pub components: usize,
    /// Largest finite distance between two nodes.
    pub diameter: usize,
}

impl FlipGraph {
    pub fn summary(&self) -> String {
        format!(
            "nodes={} edges={} components={} diameter={}",
            self.nodes.len(),
            self.edges.len(),
            self.components,
            self.diameter
        )
    }

    /// Node list, adjacency lists and the summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "node {k} {t}");
        }
        for (k, adj) in self.adjacency.iter().enumerate() {
            let list: Vec<String> = adj.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "adj {k}: {}", list.join(" "));
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn degree(&self, k: usize) -> usize {
        self.adjacency[k].len()
    }
}

/// Flipping `removed` out of a triangulation and `added` in is legal when
/// the four endpoints form a strictly convex quadrilateral.
fn quad_is_convex(p: &Polygon, removed: &Diagonal, added: &Diagonal) -> bool {
    let mut q = [removed.i, removed.j, added.i, added.j];
    q.sort_unstable();
    (0..4).all(|k| {
        orient2d(p.vertex(q[k]), p.vertex(q[(k + 1) % 4]), p.vertex(q[(k + 2) % 4])) == Sign::Positive
    })
}

pub fn build_flip_graph(p: &Polygon) -> Result<FlipGraph> {
    build_flip_graph_with_budget(p, MAX_FLIP_GRAPH_VERTICES)
}

pub fn build_flip_graph_with_budget(p: &Polygon, max: usize) -> Result<FlipGraph> {
    let nodes = enumerate_with_budget(p, max.min(MAX_FLIP_GRAPH_VERTICES))?;

    // triangulations sharing all but one diagonal meet in one bucket
    let mut buckets: HashMap<Vec<Diagonal>, Vec<(usize, Diagonal)>> = HashMap::new();
    for (k, t) in nodes.iter().enumerate() {
        for (skip, d) in t.diagonals().iter().enumerate() {
            let mut key = t.diagonals().to_vec();
            key.remove(skip);
            buckets.entry(key).or_default().push((k, *d));
        }
    }
    let mut edges = Vec::new();
    for group in buckets.values() {
        for (x, (a, da)) in group.iter().enumerate() {
            for (b, db) in &group[x + 1..] {
                if quad_is_convex(p, da, db) {
                    edges.push((*a.min(b), *a.max(b)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }

    let distances: Vec<Vec<Option<usize>>> = (0..nodes.len()).into_par_iter().map(|s| bfs(&adjacency, s)).collect();
    let diameter = distances.iter().flatten().flatten().copied().max().unwrap_or(0);
    let mut components = 0;
    let mut seen = vec![false; nodes.len()];
    for s in 0..nodes.len() {
        if seen[s] {
            continue;
        }
        components += 1;
        for (k, d) in distances[s].iter().enumerate() {
            if d.is_some() {
                seen[k] = true;
            }
        }
    }

    Ok(FlipGraph {
        nodes,
        edges,
        adjacency,
        components,
        diameter,
    })
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have a distance");
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}
