//! Floating diagnostics over exact data: corner angles, cone angles and the
//! discrete Gauss–Bonnet balance.
//!
//! Angles of rational triangles are irrational, so these checks run in
//! arbitrary-precision binary floating point (200 bits unless told
//! otherwise) and compare against a tolerance. Nothing structural depends
//! on them.

use std::sync::Arc;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

use crate::geom::{Scalar, Sign, Vec2};
use crate::surface::{vertex_orbits, DartId, TriSurface};

pub const DEFAULT_PRECISION: usize = 200;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const RM: RoundingMode = RoundingMode::ToEven;

/// Precision-bound evaluation context.
pub struct AngleContext {
    bits: usize,
    consts: Consts,
    pi: BigFloat,
}

impl AngleContext {
    pub fn new(bits: usize) -> Self {
        let bits = bits.max(64);
        let mut consts = Consts::new().expect("astro-float constant cache");
        let pi = consts.pi(bits, RM);
        AngleContext { bits, consts, pi }
    }

    pub fn pi(&self) -> &BigFloat {
        &self.pi
    }

    fn int(&mut self, n: &BigInt) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, self.bits, RM, &mut self.consts)
    }

    fn scalar(&mut self, s: &Scalar) -> BigFloat {
        let n = self.int(s.numer());
        let d = self.int(s.denom());
        n.div(&d, self.bits, RM)
    }

    pub fn from_i64(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    /// Angle in `(0, π)` from `u` to `v`, given `cross(u, v) > 0`.
    pub fn angle_between(&mut self, u: &Vec2, v: &Vec2) -> BigFloat {
        let dot = u.dot(v);
        let cross = u.cross(v);
        debug_assert_eq!(cross.sign(), Sign::Positive);
        match dot.sign() {
            Sign::Zero => self.pi.div(&self.from_i64(2), self.bits, RM),
            sign => {
                let ratio = self.scalar(&(&cross / &dot.abs()));
                let base = ratio.atan(self.bits, RM, &mut self.consts);
                if sign == Sign::Positive {
                    base
                } else {
                    self.pi.sub(&base, self.bits, RM)
                }
            }
        }
    }

    /// Interior angle of the corner at the origin of `d`.
    pub fn corner_angle(&mut self, s: &TriSurface, d: DartId) -> BigFloat {
        let out = s.vector(d);
        let back = -s.vector(d.prev());
        self.angle_between(out, &back)
    }

    pub fn to_f64(&self, x: &BigFloat) -> f64 {
        // Display emits a plain decimal with exponent, which f64 parses
        x.to_string().parse().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug)]
pub struct ConeAngle {
    pub label: Arc<str>,
    pub interior: bool,
    /// Total angle divided by π.
    pub over_pi: f64,
}

/// Total angle at each vertex, in `vertex_orbits` order.
pub fn cone_angles(s: &TriSurface, bits: usize) -> Vec<ConeAngle> {
    let mut ctx = AngleContext::new(bits);
    cone_angles_raw(s, &mut ctx)
        .into_iter()
        .map(|(label, interior, theta)| ConeAngle {
            label,
            interior,
            over_pi: ctx.to_f64(&ctx.div(&theta, ctx.pi())),
        })
        .collect()
}

fn cone_angles_raw(s: &TriSurface, ctx: &mut AngleContext) -> Vec<(Arc<str>, bool, BigFloat)> {
    let orbits = vertex_orbits(s).expect("validated surface");
    orbits
        .into_iter()
        .map(|o| {
            let mut theta = ctx.from_i64(0);
            for &d in &o.corners {
                let a = ctx.corner_angle(s, d);
                theta = ctx.add(&theta, &a);
            }
            (o.label, o.interior, theta)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GaussBonnetReport {
    pub chi: i64,
    pub cone_angles: Vec<ConeAngle>,
    /// `|Σ defects − 2πχ|`.
    pub residual: f64,
    /// `|Σ corner angles − Fπ|`.
    pub triangle_residual: f64,
    pub tolerance: f64,
    pub precision: usize,
    pub pass: bool,
}

/// Checks `Σ_interior (2π − θ) + Σ_boundary (π − θ) = 2πχ` and
/// `Σ corners = Fπ` within `tol`.
pub fn gauss_bonnet_check(s: &TriSurface, tol: f64, bits: usize) -> GaussBonnetReport {
    let mut ctx = AngleContext::new(bits);
    let counts = s.counts();
    let raw = cone_angles_raw(s, &mut ctx);
    let pi = ctx.pi().clone();
    let two_pi = ctx.add(&pi, &pi);

    let mut defect = ctx.from_i64(0);
    let mut corner_total = ctx.from_i64(0);
    for (_, interior, theta) in &raw {
        let full = if *interior { &two_pi } else { &pi };
        defect = ctx.add(&defect, &ctx.sub(full, theta));
        corner_total = ctx.add(&corner_total, theta);
    }
    let chi = ctx.from_i64(counts.chi);
    let expected = ctx.mul(&two_pi, &chi);
    let residual = ctx.to_f64(&ctx.sub(&defect, &expected).abs());

    let faces = ctx.from_i64(counts.faces as i64);
    let tri_expected = ctx.mul(&pi, &faces);
    let triangle_residual =
        ctx.to_f64(&ctx.sub(&corner_total, &tri_expected).abs());

    let cone_angles = raw
        .into_iter()
        .map(|(label, interior, theta)| ConeAngle {
            label,
            interior,
            over_pi: ctx.to_f64(&ctx.div(&theta, &pi)),
        })
        .collect();

    GaussBonnetReport {
        chi: counts.chi,
        cone_angles,
        residual,
        triangle_residual,
        tolerance: tol,
        precision: ctx.bits,
        pass: residual < tol && triangle_residual < tol,
    }
}
