//! The five registered surface models.
//!
//! K3N2: y^2 + (1 - t^2) xy - t^2 y = x^3 - t^2 x^2 over the t-line;
//! K3N4 is the same fibration with t replaced by t^2 (so t^4 in the
//! coefficients). Their infinity fibers, after the admissible change
//! (x, y) -> (u^2 x, u^3 y) with u the minimal monomial in s = 1/t making
//! the coefficients s-integral, reduce at s = 0 to y^2 - xy = x^3.
//!
//! GAMMA15 is the twisted short-Weierstrass model
//! y^2 = x^3 - P4(t)/48 x + P6(t)/864 (the twist by t has been absorbed by
//! (x, y) -> (tx, ty), which leaves fiber counts and reduction types alone);
//! EN2/EN4 substitute t^2 and t^4. Both P4 and P6 are palindromic up to the
//! sign pattern of t -> -1/t, so the infinity fiber equals the t = 0 fiber.

use super::{BasePoint, SurfaceModel};
use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FieldElement};

pub struct K3N2;
pub struct K3N4;
pub struct Gamma15;
pub struct En2;
pub struct En4;

const P4: [i64; 5] = [1, 12, 14, -12, 1];
const P6: [i64; 7] = [1, 18, 75, 0, 75, -18, 1];

fn k3_fiber(ctx: &FieldCtx, tpow: Option<FieldElement>) -> [FieldElement; 5] {
    match tpow {
        // [1 - s, -s, -s, 0, 0] with s the appropriate power of t
        Some(s) => [
            ctx.sub(&ctx.one(), &s),
            ctx.neg(&s),
            ctx.neg(&s),
            ctx.zero(),
            ctx.zero(),
        ],
        // infinity chart at sigma = 0: y^2 - xy = x^3
        None => [
            ctx.from_i64(-1),
            ctx.zero(),
            ctx.zero(),
            ctx.zero(),
            ctx.zero(),
        ],
    }
}

fn eval_int_poly(ctx: &FieldCtx, coeffs: &[i64], x: &FieldElement) -> FieldElement {
    let mut acc = ctx.zero();
    for &c in coeffs.iter().rev() {
        acc = ctx.mul(&acc, x);
        acc = ctx.add(&acc, &ctx.from_i64(c));
    }
    acc
}

fn short_weierstrass_fiber(ctx: &FieldCtx, tpow: Option<FieldElement>) -> [FieldElement; 5] {
    let inv48 = ctx
        .inv(&ctx.from_u64(48))
        .expect("48 invertible for admissible p");
    let inv864 = ctx
        .inv(&ctx.from_u64(864))
        .expect("864 invertible for admissible p");
    let (a4, a6) = match tpow {
        Some(s) => (
            ctx.neg(&ctx.mul(&eval_int_poly(ctx, &P4, &s), &inv48)),
            ctx.mul(&eval_int_poly(ctx, &P6, &s), &inv864),
        ),
        // reversed polynomials at sigma = 0: leading coefficients are 1
        None => (ctx.neg(&inv48), inv864),
    };
    [ctx.zero(), ctx.zero(), ctx.zero(), a4, a6]
}

fn require_odd(name: &'static str, p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Inadmissible {
            model: name,
            p,
            why: "characteristic 2 out of scope",
        });
    }
    Ok(())
}

fn require_at_least_five(name: &'static str, p: u64) -> Result<()> {
    require_odd(name, p)?;
    if p == 3 {
        return Err(Error::Inadmissible {
            model: name,
            p,
            why: "coefficient denominators 48 and 864 are not invertible",
        });
    }
    Ok(())
}

impl SurfaceModel for K3N2 {
    fn name(&self) -> &'static str {
        "k3n2"
    }
    fn half_degree(&self) -> usize {
        1
    }
    fn admissible(&self, p: u64) -> Result<()> {
        require_odd(self.name(), p)
    }
    fn fiber(&self, ctx: &FieldCtx, t: &BasePoint) -> [FieldElement; 5] {
        match t {
            BasePoint::Finite(t) => k3_fiber(ctx, Some(ctx.mul(t, t))),
            BasePoint::Infinity => k3_fiber(ctx, None),
        }
    }
}

impl SurfaceModel for K3N4 {
    fn name(&self) -> &'static str {
        "k3n4"
    }
    fn half_degree(&self) -> usize {
        3
    }
    fn admissible(&self, p: u64) -> Result<()> {
        require_odd(self.name(), p)
    }
    fn fiber(&self, ctx: &FieldCtx, t: &BasePoint) -> [FieldElement; 5] {
        match t {
            BasePoint::Finite(t) => {
                let t2 = ctx.mul(t, t);
                k3_fiber(ctx, Some(ctx.mul(&t2, &t2)))
            }
            BasePoint::Infinity => k3_fiber(ctx, None),
        }
    }
}

impl SurfaceModel for Gamma15 {
    fn name(&self) -> &'static str {
        "gamma15"
    }
    fn half_degree(&self) -> usize {
        0
    }
    fn admissible(&self, p: u64) -> Result<()> {
        require_at_least_five(self.name(), p)
    }
    fn fiber(&self, ctx: &FieldCtx, t: &BasePoint) -> [FieldElement; 5] {
        match t {
            BasePoint::Finite(t) => short_weierstrass_fiber(ctx, Some(*t)),
            BasePoint::Infinity => short_weierstrass_fiber(ctx, None),
        }
    }
}

impl SurfaceModel for En2 {
    fn name(&self) -> &'static str {
        "en2"
    }
    fn half_degree(&self) -> usize {
        1
    }
    fn admissible(&self, p: u64) -> Result<()> {
        require_at_least_five(self.name(), p)
    }
    fn fiber(&self, ctx: &FieldCtx, t: &BasePoint) -> [FieldElement; 5] {
        match t {
            BasePoint::Finite(t) => short_weierstrass_fiber(ctx, Some(ctx.mul(t, t))),
            BasePoint::Infinity => short_weierstrass_fiber(ctx, None),
        }
    }
}

impl SurfaceModel for En4 {
    fn name(&self) -> &'static str {
        "en4"
    }
    fn half_degree(&self) -> usize {
        3
    }
    fn admissible(&self, p: u64) -> Result<()> {
        require_at_least_five(self.name(), p)
    }
    fn fiber(&self, ctx: &FieldCtx, t: &BasePoint) -> [FieldElement; 5] {
        match t {
            BasePoint::Finite(t) => {
                let t2 = ctx.mul(t, t);
                short_weierstrass_fiber(ctx, Some(ctx.mul(&t2, &t2)))
            }
            BasePoint::Infinity => short_weierstrass_fiber(ctx, None),
        }
    }
}
