//! The acceptance criteria as runnable checks, shared by `selftest` and
//! the acceptance test target.

use std::fmt;

use rand::Rng;

use flipflat::angles::{cone_angles, gauss_bonnet_check, ConeAngle};
use flipflat::corpus::{self, convex_polygon, random_flip_walk, seeded_rng};
use flipflat::polygon::valid_diagonals;
use flipflat::*;

pub const ANGLE_TOLERANCE: f64 = 1e-9;
pub const WALKS_PER_SURFACE: usize = 50;
pub const MAX_WALK_LENGTH: usize = 30;
pub const DEFAULT_SEED: u64 = 0x5eed_f11f;
pub const CATALAN: [usize; 5] = [2, 5, 14, 42, 132];

#[derive(Clone, Debug)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} criterion {} {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub precision: usize,
    pub random_polygons: Vec<Polygon>,
}

impl Config {
    /// The checked-in random polygon corpus and the default seed.
    pub fn standard() -> Result<Self> {
        Ok(Config {
            seed: DEFAULT_SEED,
            precision: angles::DEFAULT_PRECISION,
            random_polygons: corpus::random_polygons()?,
        })
    }
}

fn check(id: u8, name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (pass, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check { id, name, pass, detail }
}

/// Closed corpus surfaces plus every corpus polygon as a triangulated disk.
pub fn corpus_surfaces() -> Result<Vec<(String, TriSurface)>> {
    let mut out: Vec<(String, TriSurface)> =
        corpus::surfaces()?.into_iter().map(|n| (n.name, n.surface)).collect();
    for p in corpus::polygons()? {
        let s = surface_from_polygon(&p, &triangulate(&p)?, &[])?;
        out.push((format!("{} disk", p.name()), s));
    }
    Ok(out)
}

/// Corpus surfaces plus the endpoints of a few seeded walks on each closed
/// surface, so flips are exercised away from the stored triangulations.
pub fn flip_test_surfaces(seed: u64) -> Result<Vec<(String, TriSurface)>> {
    let mut out = corpus_surfaces()?;
    for (k, name) in corpus::CLOSED_SURFACES.iter().enumerate() {
        let s = corpus::surface(name)?.surface;
        let mut rng = seeded_rng(seed ^ (0x9e37 + k as u64));
        for w in 0..4 {
            let (_, end) = random_flip_walk(&s, &mut rng, 3 + 4 * w)?;
            out.push((format!("{name} walk {w}"), end));
        }
    }
    Ok(out)
}

fn flippable_edges(s: &TriSurface) -> Result<Vec<EdgeId>> {
    let mut out = Vec::new();
    for e in s.interior_edges() {
        if is_flippable(s, e)? {
            out.push(e);
        }
    }
    Ok(out)
}

pub fn flip_involution(seed: u64) -> Check {
    check(1, "flip involution", || {
        let mut flips = 0;
        let mut bad = Vec::new();
        for (name, s) in flip_test_surfaces(seed)? {
            for e in flippable_edges(&s)? {
                flips += 1;
                let back = flip(&flip(&s, e)?, e)?;
                if !equals(&back, &s) {
                    bad.push(format!("{name} edge {e}"));
                }
            }
        }
        Ok((bad.is_empty() && flips > 0, format!("{flips} double flips, {} mismatches {bad:?}", bad.len())))
    })
}

fn boundary_signature(s: &TriSurface) -> Vec<(EdgeId, String, Scalar)> {
    let mut v: Vec<_> = s
        .boundary_darts()
        .into_iter()
        .map(|d| (s.dart(d).edge(), s.dart(d).origin().to_string(), s.vector(d).norm2()))
        .collect();
    v.sort();
    v
}

fn sorted_angles(mut a: Vec<ConeAngle>) -> Vec<ConeAngle> {
    a.sort_by(|x, y| (&x.label, x.interior).cmp(&(&y.label, y.interior)).then(x.over_pi.total_cmp(&y.over_pi)));
    a
}

pub fn conservation(seed: u64, precision: usize) -> Check {
    check(2, "conservation under flips", || {
        let mut flips = 0;
        let mut worst = 0.0f64;
        let mut bad = Vec::new();
        for (name, s) in flip_test_surfaces(seed)? {
            let counts = s.counts();
            let area = s.total_area();
            let boundary = boundary_signature(&s);
            let angles = sorted_angles(cone_angles(&s, precision));
            for e in flippable_edges(&s)? {
                flips += 1;
                let t = flip(&s, e)?;
                let after = sorted_angles(cone_angles(&t, precision));
                let same_angles = angles.len() == after.len()
                    && angles.iter().zip(&after).all(|(a, b)| {
                        worst = worst.max((a.over_pi - b.over_pi).abs() * std::f64::consts::PI);
                        a.label == b.label
                            && a.interior == b.interior
                            && (a.over_pi - b.over_pi).abs() * std::f64::consts::PI < ANGLE_TOLERANCE
                    });
                if t.counts() != counts || t.total_area() != area || boundary_signature(&t) != boundary || !same_angles {
                    bad.push(format!("{name} edge {e}"));
                }
            }
        }
        Ok((
            bad.is_empty() && flips > 0,
            format!("{flips} flips, max cone angle drift {worst:.1e}, violations {bad:?}"),
        ))
    })
}

pub fn gauss_bonnet(precision: usize) -> Check {
    check(3, "gauss-bonnet", || {
        let mut worst = 0.0f64;
        let mut bad = Vec::new();
        for (name, s) in corpus_surfaces()? {
            let r = gauss_bonnet_check(&s, ANGLE_TOLERANCE, precision);
            worst = worst.max(r.residual).max(r.triangle_residual);
            if !(r.pass && r.residual < ANGLE_TOLERANCE && r.triangle_residual < ANGLE_TOLERANCE) {
                bad.push(name);
            }
        }
        let l = gauss_bonnet_check(&corpus::surface("lshape_genus2")?.surface, ANGLE_TOLERANCE, precision);
        let six_pi = l.chi == -2
            && l.cone_angles.len() == 1
            && (l.cone_angles[0].over_pi - 6.0).abs() * std::f64::consts::PI < ANGLE_TOLERANCE;
        if !six_pi {
            bad.push("lshape_genus2 cone angle".into());
        }
        Ok((bad.is_empty(), format!("max residual {worst:.1e}, genus-2 angle 6pi {six_pi}, failures {bad:?}")))
    })
}

fn is_proper_triangulation(p: &Polygon, t: &PolyTriangulation) -> Result<bool> {
    if t.diagonals().len() + 3 != p.len() {
        return Ok(false);
    }
    for a in t.diagonals() {
        if !p.is_valid_diagonal(a) {
            return Ok(false);
        }
        for b in t.diagonals() {
            if p.intersection_number(a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn corner_cutting(random: &[Polygon]) -> Check {
    check(4, "corner-cutting triangulation", || {
        let mut polys: Vec<Polygon> = (3..=12).map(convex_polygon).collect::<Result<_>>()?;
        polys.extend(random.iter().cloned());
        let mut bad = Vec::new();
        let mut enumerated = 0;
        for p in &polys {
            let t = triangulate(p)?;
            let mut ok = is_proper_triangulation(p, &t)?;
            if p.len() <= 12 {
                enumerated += 1;
                ok &= enumerate_triangulations(p)?.contains(&t);
            }
            if !ok {
                bad.push(p.name().to_string());
            }
        }
        Ok((
            bad.is_empty() && random.len() >= 100,
            format!("{} polygons ({} random), {enumerated} cross-checked by enumeration, failures {bad:?}", polys.len(), random.len()),
        ))
    })
}

/// Triangulation count by splitting at the apex over edge `(i, j)`,
/// independent of the clique enumeration.
pub fn ear_recursion_count(p: &Polygon) -> u64 {
    let n = p.len();
    let valid = valid_diagonals(p);
    let usable = |a: usize, b: usize| b == a + 1 || (a == 0 && b == n - 1) || valid.iter().any(|d| (d.i, d.j) == (a, b));
    let mut memo = vec![vec![0u64; n]; n];
    for gap in 1..n {
        for i in 0..n - gap {
            let j = i + gap;
            memo[i][j] = if gap == 1 {
                1
            } else {
                (i + 1..j)
                    .filter(|&k| usable(i, k) && usable(k, j))
                    .map(|k| memo[i][k] * memo[k][j])
                    .sum()
            };
        }
    }
    memo[0][n - 1]
}

pub fn catalan() -> Check {
    check(5, "catalan counts", || {
        let mut got = Vec::new();
        let mut ok = true;
        for (n, &want) in (4..=8).zip(&CATALAN) {
            let p = convex_polygon(n)?;
            let count = enumerate_triangulations(&p)?.len();
            ok &= count == want && ear_recursion_count(&p) == want as u64;
            got.push(count);
        }
        Ok((ok, format!("n=4..8 -> {got:?}")))
    })
}

pub fn flip_graphs_connected(random: &[Polygon]) -> Check {
    check(6, "polygon flip graphs connected", || {
        let mut polys: Vec<Polygon> = (4..=8).map(convex_polygon).collect::<Result<_>>()?;
        polys.extend(random.iter().cloned());
        let mut bad = Vec::new();
        let mut nodes = 0;
        for p in &polys {
            let g = build_flip_graph(p)?;
            nodes += g.nodes.len();
            if g.components != 1 {
                bad.push(format!("{} {}", p.name(), g.summary()));
            }
        }
        Ok((bad.is_empty(), format!("{} polygons, {nodes} triangulations, disconnected {bad:?}", polys.len())))
    })
}

pub fn crossing_pattern(random: &[Polygon]) -> Check {
    check(7, "crossing pattern forces a convex quadrilateral", || {
        let mut polys: Vec<Polygon> = (4..=8).map(convex_polygon).collect::<Result<_>>()?;
        polys.extend(corpus::polygons()?);
        polys.extend(random.iter().filter(|p| p.len() <= 8).cloned());
        let mut pairs = 0;
        let mut both = 0;
        let mut bad = Vec::new();
        for p in &polys {
            let r = verify_crossing_pattern(p, 8)?;
            pairs += r.pairs;
            both += r.both;
            if !r.counterexamples.is_empty() {
                bad.push(format!("{} {:?}", p.name(), r.counterexamples));
            }
        }
        Ok((
            bad.is_empty() && both > 0,
            format!("{} polygons, {pairs} ordered pairs, {both} with both conditions, counterexamples {bad:?}", polys.len()),
        ))
    })
}

pub fn closed_surface_paths(seed: u64) -> Check {
    check(8, "flip paths on closed surfaces", || {
        let mut bad = Vec::new();
        let mut total = 0;
        let mut longest = 0;
        for (k, name) in corpus::CLOSED_SURFACES.iter().enumerate() {
            let start = canonical_delaunay(&corpus::surface(name)?.surface)?;
            let mut rng = seeded_rng(seed.wrapping_add(k as u64));
            for w in 0..WALKS_PER_SURFACE {
                let len = rng.gen_range(1..=MAX_WALK_LENGTH);
                let (walk, end) = random_flip_walk(&start.surface, &mut rng, len)?;
                total += 1;
                longest = longest.max(walk.len());
                if canonical_delaunay(&end)?.canonical != start.canonical {
                    bad.push(format!("{name} walk {w}: canonical form differs"));
                    continue;
                }
                let path = flip_path(&end, &start.surface)?;
                if !equals(&replay(&end, &path)?, &start.surface) {
                    bad.push(format!("{name} walk {w}: replay differs"));
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!("{total} walks (longest {longest}), failures {bad:?}"),
        ))
    })
}

/// CLI invocations exercised by the determinism criterion; arguments are
/// resolved against the built-in corpus.
pub const DETERMINISM_COMMANDS: &[&[&str]] = &[
    &["validate", "square_torus.fs"],
    &["validate", "lshape_genus2.fs"],
    &["triangulate", "lshape.poly"],
    &["flip", "square_torus.fs", "--edge", "0"],
    &["delaunay", "generic_torus.fs"],
    &["canon", "lshape_genus2.fs"],
    &["path", "square_torus.fs", "square_torus.fs"],
    &["enumerate", "hexagon.poly"],
    &["flipgraph", "pentagon.poly"],
    &["verify-lemma24", "hexagon.poly"],
];

/// Runs each command twice through `run` and compares the bytes.
pub fn determinism(mut run: impl FnMut(&[&str]) -> (i32, Vec<u8>)) -> Check {
    check(9, "deterministic output", || {
        let mut bad = Vec::new();
        for args in DETERMINISM_COMMANDS {
            let first = run(args);
            let second = run(args);
            if first != second || first.0 != 0 || first.1.is_empty() {
                bad.push(args.join(" "));
            }
        }
        Ok((bad.is_empty(), format!("{} commands run twice, differing {bad:?}", DETERMINISM_COMMANDS.len())))
    })
}

/// Criteria 1 to 9, with determinism checked by running the commands
/// in-process.
pub fn run_all(config: &Config) -> Vec<Check> {
    vec![
        flip_involution(config.seed),
        conservation(config.seed, config.precision),
        gauss_bonnet(config.precision),
        corner_cutting(&config.random_polygons),
        catalan(),
        flip_graphs_connected(&config.random_polygons),
        crossing_pattern(&config.random_polygons),
        closed_surface_paths(config.seed),
        determinism(|args| {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let argv = std::iter::once("flipflat").chain(args.iter().copied());
            let code = crate::run(argv, &mut out, &mut err);
            (code, out)
        }),
    ]
}
