//! Plain-text surface and polygon files.
//!
//! Surface files:
//!
//! ```text
//! surface <name>
//! triangle <tid> <v0> <x0> <y0> <v1> <x1> <y1> <v2> <x2> <y2>
//! glue <tid>.<side> <tid>.<side>
//! boundary <tid>.<side>
//! ```
//!
//! Polygon files:
//!
//! ```text
//! polygon <name>
//! vertex <label> <x> <y>
//! ```
//!
//! Coordinates are rationals `p/q`. Blank lines and `#` comments are
//! ignored. Edge ids follow the order of the glue and boundary lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::{Point2, Scalar};
use crate::polygon::Polygon;
use crate::surface::{build_surface, Pairing, SideRef, TriSurface, TriangleSpec};

/// A surface together with the name from its header line.
#[derive(Clone, Debug)]
pub struct NamedSurface {
    pub name: String,
    pub surface: TriSurface,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (k + 1, line.split_whitespace().collect()))
    })
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseLine { line, msg: msg.into() }
}

fn scalar(line: usize, tok: &str) -> Result<Scalar> {
    tok.parse().map_err(|e: Error| bad(line, format!("{tok:?}: {e}")))
}

fn header(line: usize, words: &[&str], keyword: &str) -> Result<String> {
    if words.first() != Some(&keyword) {
        return Err(bad(line, format!("expected `{keyword} <name>` header")));
    }
    if words.len() < 2 {
        return Err(bad(line, "missing name"));
    }
    Ok(words[1..].join(" "))
}

pub fn parse_surface(text: &str) -> Result<NamedSurface> {
    let mut lines = content_lines(text);
    let (first, words) = lines.next().ok_or_else(|| Error::Parse("empty surface file".into()))?;
    let name = header(first, &words, "surface")?;

    let mut tids: HashMap<String, usize> = HashMap::new();
    let mut specs = Vec::new();
    let mut pairings = Vec::new();
    let mut side_lines: Vec<(usize, Vec<String>)> = Vec::new();

    for (line, words) in lines {
        match words[0] {
            "triangle" => {
                if words.len() != 11 {
                    return Err(bad(line, "triangle needs an id and three `label x y` corners"));
                }
                if !side_lines.is_empty() {
                    return Err(bad(line, "triangles must precede glue and boundary lines"));
                }
                if tids.insert(words[1].to_string(), specs.len()).is_some() {
                    return Err(bad(line, format!("duplicate triangle id {}", words[1])));
                }
                let mut labels = [""; 3];
                let mut corners = Vec::with_capacity(3);
                for k in 0..3 {
                    labels[k] = words[2 + 3 * k];
                    let x = scalar(line, words[3 + 3 * k])?;
                    let y = scalar(line, words[4 + 3 * k])?;
                    corners.push(Point2::new(x, y));
                }
                let corners: [Point2; 3] = corners.try_into().expect("three corners");
                specs.push(TriangleSpec::from_corners(labels, corners));
            }
            "glue" | "boundary" => {
                side_lines.push((line, words.iter().map(|w| w.to_string()).collect()));
            }
            other => return Err(bad(line, format!("unknown keyword {other:?}"))),
        }
    }

    let side = |line: usize, tok: &str| -> Result<SideRef> {
        let (t, s) = tok
            .split_once('.')
            .ok_or_else(|| bad(line, format!("{tok:?} is not <tid>.<side>")))?;
        let triangle = *tids.get(t).ok_or_else(|| bad(line, format!("unknown triangle {t}")))?;
        let side: usize = s.parse().map_err(|_| bad(line, format!("bad side {s:?}")))?;
        if side > 2 {
            return Err(bad(line, format!("side {side} out of range")));
        }
        Ok(SideRef::new(triangle, side))
    };
    for (line, words) in &side_lines {
        let pairing = match (words[0].as_str(), words.len()) {
            ("glue", 3) => Pairing::Glue(side(*line, &words[1])?, side(*line, &words[2])?),
            ("boundary", 2) => Pairing::Boundary(side(*line, &words[1])?),
            ("glue", _) => return Err(bad(*line, "glue takes two sides")),
            _ => return Err(bad(*line, "boundary takes one side")),
        };
        pairings.push(pairing);
    }

    let surface = build_surface(&specs, &pairings)?;
    Ok(NamedSurface { name, surface })
}

/// Triangles are written in their own frames with corner 0 at the origin;
/// pairing lines follow edge id order so ids survive a round trip.
pub fn write_surface(name: &str, s: &TriSurface) -> String {
    let mut out = format!("surface {name}\n");
    for t in 0..s.num_triangles() {
        let corners = s.triangle_corners(t);
        let _ = write!(out, "triangle {t}");
        for (k, c) in corners.iter().enumerate() {
            let label = s.dart(crate::surface::DartId::of(t, k)).origin();
            let _ = write!(out, " {label} {} {}", c.x, c.y);
        }
        out.push('\n');
    }
    let side = |d: crate::surface::DartId| SideRef::new(d.triangle(), d.side());
    for e in s.edge_ids() {
        let (a, b) = s.edge_darts(e).expect("listed edge exists");
        match b {
            Some(b) => {
                let _ = writeln!(out, "glue {} {}", side(a), side(b));
            }
            None => {
                let _ = writeln!(out, "boundary {}", side(a));
            }
        }
    }
    out
}

pub fn parse_polygon(text: &str) -> Result<Polygon> {
    let mut lines = content_lines(text);
    let (first, words) = lines.next().ok_or_else(|| Error::Parse("empty polygon file".into()))?;
    let name = header(first, &words, "polygon")?;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (line, words) in lines {
        if words[0] != "vertex" {
            return Err(bad(line, format!("unknown keyword {:?}", words[0])));
        }
        if words.len() != 4 {
            return Err(bad(line, "vertex needs `label x y`"));
        }
        labels.push(words[1].to_string());
        points.push(Point2::new(scalar(line, words[2])?, scalar(line, words[3])?));
    }
    Polygon::new(name, points, labels)
}

pub fn write_polygon(p: &Polygon) -> String {
    let mut out = format!("polygon {}\n", p.name());
    for (v, label) in p.vertices().iter().zip(p.labels()) {
        let _ = writeln!(out, "vertex {label} {} {}", v.x, v.y);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::equals;
    use crate::surface::fixtures::*;

    const TORUS: &str = "\
# unit square, diagonal from (0,0) to (1,1)
surface square torus
triangle 0 p 0/1 0/1 p 1/1 0/1 p 1/1 1/1
triangle 1 p 0/1 0/1 p 1/1 1/1 p 0/1 1/1

glue 0.2 1.0
glue 0.0 1.1
glue 0.1 1.2
";

    #[test]
    fn parses_square_torus() {
        let n = parse_surface(TORUS).unwrap();
        assert_eq!(n.name, "square torus");
        assert_eq!(n.surface.counts().to_string(), "V=1 E=3 F=2 chi=0");
        assert!(equals(&n.surface, &square_torus()));
    }

    #[test]
    fn surface_round_trip() {
        for s in [square_torus(), rectangle_quad(), single_triangle()] {
            let text = write_surface("x", &s);
            let back = parse_surface(&text).unwrap().surface;
            assert_eq!(write_surface("x", &back), text);
            assert!(equals(&s, &back));
            for e in s.edge_ids() {
                assert_eq!(s.is_interior(e), back.is_interior(e));
            }
        }
    }

    #[test]
    fn surface_errors_carry_line_numbers() {
        let cases = [
            ("", None),
            ("polygon x\n", Some(1)),
            ("surface x\ntriangle 0 a 0/1 0/1 b 1/1 0/1\n", Some(2)),
            ("surface x\ntriangle 0 a 0/1 0/1 b 1/0 0/1 c 0/1 1/1\n", Some(2)),
            ("surface x\ntriangle 0 a 0 0 b 1 0 c 0 1\nboundary 0.3\n", Some(3)),
            ("surface x\ntriangle 0 a 0 0 b 1 0 c 0 1\nboundary 7.0\n", Some(3)),
            ("surface x\ntriangle 0 a 0 0 b 1 0 c 0 1\nstitch 0.0\n", Some(3)),
        ];
        for (text, line) in cases {
            match (parse_surface(text), line) {
                (Err(Error::ParseLine { line: l, .. }), Some(want)) => assert_eq!(l, want, "{text:?}"),
                (Err(Error::Parse(_)), None) => {}
                (other, _) => panic!("{text:?}: {other:?}"),
            }
        }
        // structurally well formed but missing pairings
        assert!(parse_surface("surface x\ntriangle 0 a 0 0 b 1 0 c 0 1\nboundary 0.0\n").is_err());
    }

    #[test]
    fn polygon_round_trip() {
        let text = "polygon pent\nvertex a 0/1 0/1\nvertex b 4/1 0/1\nvertex c 5/1 3/1\nvertex d 2/1 5/1\nvertex e -1/1 3/1\n";
        let p = parse_polygon(text).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.labels()[4], "e");
        assert_eq!(write_polygon(&p), text);
        assert!(parse_polygon("polygon cw\nvertex a 0 0\nvertex b 0 1\nvertex c 1 0\n").is_err());
        assert!(matches!(
            parse_polygon("polygon x\nvertex a 0 0\nvert b 1 0\n"),
            Err(Error::ParseLine { line: 3, .. })
        ));
    }
}
