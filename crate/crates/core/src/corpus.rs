//! Built-in test corpus and seeded generators.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flip::{flip, is_flippable, FlipSequence};
use crate::geom::{Point2, Scalar, Sign, Vec2};
use crate::io::{parse_polygon, parse_surface, NamedSurface};
use crate::polygon::Polygon;
use crate::surface::TriSurface;

pub const SURFACE_FILES: &[(&str, &str)] = &[
    ("triangle.fs", include_str!("../corpus/triangle.fs")),
    ("square_torus.fs", include_str!("../corpus/square_torus.fs")),
    ("generic_torus.fs", include_str!("../corpus/generic_torus.fs")),
    ("lshape_genus2.fs", include_str!("../corpus/lshape_genus2.fs")),
];

pub const POLYGON_FILES: &[(&str, &str)] = &[
    ("quad.poly", include_str!("../corpus/quad.poly")),
    ("reflex_quad.poly", include_str!("../corpus/reflex_quad.poly")),
    ("pentagon.poly", include_str!("../corpus/pentagon.poly")),
    ("hexagon.poly", include_str!("../corpus/hexagon.poly")),
    ("lshape.poly", include_str!("../corpus/lshape.poly")),
];

/// The checked-in random polygon corpus, regenerated by
/// [`random_corpus`] from [`RANDOM_CORPUS_SEED`].
pub const RANDOM_POLYGONS: &str = include_str!("../corpus/random_polygons.txt");
pub const RANDOM_CORPUS_SEED: u64 = 20_240_601;
pub const RANDOM_CORPUS_SIZE: usize = 120;
pub const RANDOM_CORPUS_MAX_N: usize = 10;

/// Closed surfaces used for random flip walks.
pub const CLOSED_SURFACES: &[&str] = &["square_torus.fs", "generic_torus.fs", "lshape_genus2.fs"];

fn lookup<'a>(table: &[(&str, &'a str)], name: &str) -> Result<&'a str> {
    table
        .iter()
        .find(|(n, _)| *n == name || n.split('.').next() == Some(name))
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::Parse(format!("no corpus entry named {name:?}")))
}

pub fn surface(name: &str) -> Result<NamedSurface> {
    parse_surface(lookup(SURFACE_FILES, name)?)
}

pub fn surfaces() -> Result<Vec<NamedSurface>> {
    SURFACE_FILES.iter().map(|(_, text)| parse_surface(text)).collect()
}

pub fn polygon(name: &str) -> Result<Polygon> {
    parse_polygon(lookup(POLYGON_FILES, name)?)
}

pub fn polygons() -> Result<Vec<Polygon>> {
    POLYGON_FILES.iter().map(|(_, text)| parse_polygon(text)).collect()
}

/// Splits a concatenation of polygon files at each `polygon` header.
pub fn parse_polygons(text: &str) -> Result<Vec<Polygon>> {
    let mut blocks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with("polygon ") {
            blocks.push(String::new());
        }
        match blocks.last_mut() {
            Some(b) => {
                b.push_str(line);
                b.push('\n');
            }
            None if line.split('#').next().unwrap_or("").trim().is_empty() => {}
            None => return Err(Error::Parse(format!("text before first polygon header: {line:?}"))),
        }
    }
    blocks.iter().map(|b| parse_polygon(b)).collect()
}

pub fn random_polygons() -> Result<Vec<Polygon>> {
    parse_polygons(RANDOM_POLYGONS)
}

/// A strictly convex `n`-gon with vertices on the parabola `y = x²`.
pub fn convex_polygon(n: usize) -> Result<Polygon> {
    let coords: Vec<(i64, i64)> = (0..n as i64).map(|x| (x, x * x)).collect();
    Polygon::from_ints(format!("convex{n}"), &coords)
}

/// Half-plane index then cross product: a total angular order of nonzero
/// vectors starting from the positive x axis.
fn angular_cmp(u: &Vec2, v: &Vec2) -> Ordering {
    let half = |w: &Vec2| {
        let y = w.y.sign();
        (y == Sign::Negative || (y == Sign::Zero && w.x.sign() == Sign::Negative)) as u8
    };
    half(u).cmp(&half(v)).then_with(|| match u.cross(v).sign() {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    })
}

/// Rejection-samples a simple polygon on the half-integer grid of
/// `[0, 10]²`: random points are sorted by angle around their centroid
/// and the cycle is kept when it is simple.
pub fn random_polygon<R: Rng>(rng: &mut R, n: usize, name: &str) -> Polygon {
    assert!(n >= 3);
    loop {
        let pts: Vec<Point2> = (0..n)
            .map(|_| Point2::new(Scalar::ratio(rng.gen_range(0..=20), 2), Scalar::ratio(rng.gen_range(0..=20), 2)))
            .collect();
        let mut sum = Vec2::new(Scalar::zero(), Scalar::zero());
        for p in &pts {
            sum = &sum + &(p - &Point2::origin());
        }
        let k = Scalar::from_int(n as i64);
        let centre = Point2::new(&sum.x / &k, &sum.y / &k);
        let mut rel: Vec<(Vec2, Point2)> = pts.into_iter().map(|p| (&p - &centre, p)).collect();
        if rel.iter().any(|(v, _)| v.norm2().is_zero()) {
            continue;
        }
        rel.sort_by(|a, b| angular_cmp(&a.0, &b.0));
        if rel.windows(2).any(|w| angular_cmp(&w[0].0, &w[1].0) == Ordering::Equal) {
            continue;
        }
        if let Ok(p) = Polygon::from_points(name, rel.into_iter().map(|(_, p)| p).collect()) {
            return p;
        }
    }
}

/// `count` polygons with sizes drawn uniformly from `4..=max_n`.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Polygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(4..=max_n);
            random_polygon(&mut rng, n, &format!("random{k:03}"))
        })
        .collect()
}

/// Random walk of `len` flips, each chosen uniformly among the flippable
/// interior edges. Stops early if nothing is flippable.
pub fn random_flip_walk<R: Rng>(s: &TriSurface, rng: &mut R, len: usize) -> Result<(FlipSequence, TriSurface)> {
    let mut cur = s.clone();
    let mut seq = FlipSequence::new();
    for _ in 0..len {
        let mut options = Vec::new();
        for e in cur.interior_edges() {
            if is_flippable(&cur, e)? {
                options.push(e);
            }
        }
        let Some(&e) = options.choose(rng) else { break };
        cur = flip(&cur, e)?;
        seq.push(e);
    }
    Ok((seq, cur))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
