//! Finite-precision unramified p-adic rings Z_p[w]/p^K where w is a
//! Hensel-lifted root of x^4 + 1.
//!
//! For p = 1 mod 8 the roots are scalars (residue degree f = 1); otherwise
//! they generate the unramified quadratic extension (f = 2), represented on
//! the basis {1, w}. Embedding Q(w8) by w8 -> w realizes one place above p;
//! the four roots realize all four places.

use crate::error::{Error, Result};
use crate::finite_field::{self, FieldCtx};
use crate::numfield::{NumberFieldElem, Rat};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ambient ring data: arithmetic modulo p^K on the basis {1, w}.
#[derive(Clone, Debug)]
pub struct PadicCtx {
    pub p: u64,
    pub precision: u32,
    /// Residue degree: 1 iff p = 1 mod 8, else 2.
    pub f: u8,
    pk: BigUint,
    /// For f = 2: w^2 = wsq.0 + wsq.1 * w.
    wsq: Option<(BigUint, BigUint)>,
}

/// An element a0 + a1*w mod p^K; a1 = 0 always when f = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicElem {
    pub c: [BigUint; 2],
}

/// Valuation verdict: exact when below the precision cap, otherwise only the
/// bound "at least K" can be certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl Valuation {
    pub fn at_least(&self, bound: u32) -> bool {
        match self {
            Valuation::Exact(v) => *v >= bound,
            Valuation::AtLeast(k) => *k >= bound,
        }
    }

    /// Lower bound usable for slack arithmetic.
    pub fn floor(&self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => *v,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{}", v),
            Valuation::AtLeast(k) => write!(f, ">= {}", k),
        }
    }
}

impl PadicCtx {
    pub fn zero(&self) -> PadicElem {
        PadicElem {
            c: [BigUint::zero(), BigUint::zero()],
        }
    }

    pub fn from_u64(&self, n: u64) -> PadicElem {
        PadicElem {
            c: [BigUint::from(n) % &self.pk, BigUint::zero()],
        }
    }

    fn reduce_int(&self, n: &BigInt) -> BigUint {
        let pk = BigInt::from(self.pk.clone());
        let mut m = n % &pk;
        if m.is_negative() {
            m += &pk;
        }
        m.to_biguint().unwrap()
    }

    /// Exact image of a rational with denominator coprime to p.
    pub fn from_rat(&self, r: &Rat) -> Result<PadicElem> {
        let p = BigInt::from(self.p);
        if (r.denom() % &p).is_zero() {
            return Err(Error::NotPIntegral(self.p));
        }
        let num = self.reduce_int(r.numer());
        let den = self.reduce_int(r.denom());
        let den_inv = self.scalar_inv(&den);
        Ok(PadicElem {
            c: [num * den_inv % &self.pk, BigUint::zero()],
        })
    }

    fn scalar_inv(&self, s: &BigUint) -> BigUint {
        // unit group of Z/p^K has order p^(K-1) (p-1)
        debug_assert!(!(s % self.p).is_zero());
        let order = BigUint::from(self.p).pow(self.precision - 1) * BigUint::from(self.p - 1);
        s.modpow(&(order - BigUint::one()), &self.pk)
    }

    pub fn add(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        PadicElem {
            c: [
                (&a.c[0] + &b.c[0]) % &self.pk,
                (&a.c[1] + &b.c[1]) % &self.pk,
            ],
        }
    }

    pub fn sub(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        let s0 = (&self.pk + &a.c[0] - (&b.c[0] % &self.pk)) % &self.pk;
        let s1 = (&self.pk + &a.c[1] - (&b.c[1] % &self.pk)) % &self.pk;
        PadicElem { c: [s0, s1] }
    }

    pub fn mul(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        match &self.wsq {
            None => PadicElem {
                c: [&a.c[0] * &b.c[0] % &self.pk, BigUint::zero()],
            },
            Some((c0, c1)) => {
                let cross = &a.c[1] * &b.c[1];
                let r0 = (&a.c[0] * &b.c[0] + &cross * c0) % &self.pk;
                let r1 = (&a.c[0] * &b.c[1] + &a.c[1] * &b.c[0] + &cross * c1) % &self.pk;
                PadicElem { c: [r0, r1] }
            }
        }
    }

    pub fn pow(&self, a: &PadicElem, mut e: u64) -> PadicElem {
        let mut base = a.clone();
        let mut acc = self.from_u64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Evaluate the Q(w8)-coordinates at w8 = root. Ring homomorphism on
    /// p-integral elements.
    pub fn embed(&self, a: &NumberFieldElem, root: &PadicElem) -> Result<PadicElem> {
        let mut acc = self.zero();
        for c in a.coords.iter().rev() {
            acc = self.mul(&acc, root);
            let s = self.from_rat(c)?;
            acc = self.add(&acc, &s);
        }
        Ok(acc)
    }

    /// Largest v <= K with x = 0 mod p^v; the cap reports ">= K", never a
    /// bare number, since truncated precision cannot certify more.
    pub fn valuation(&self, x: &PadicElem) -> Valuation {
        let relevant: &[BigUint] = if self.f == 1 { &x.c[..1] } else { &x.c[..] };
        if relevant.iter().all(|v| (v % &self.pk).is_zero()) {
            return Valuation::AtLeast(self.precision);
        }
        let p = BigUint::from(self.p);
        let mut v = 0u32;
        let mut vals: Vec<BigUint> = relevant.iter().map(|c| c % &self.pk).collect();
        loop {
            if vals
                .iter()
                .any(|c| !c.is_zero() && !(c % &p).is_zero())
            {
                return Valuation::Exact(v);
            }
            for c in vals.iter_mut() {
                *c /= &p;
            }
            v += 1;
            if v >= self.precision {
                return Valuation::AtLeast(self.precision);
            }
        }
    }

    /// Canonical integer representative (c0 + c1 * p^K) for deterministic
    /// ordering of roots.
    fn rep(&self, x: &PadicElem) -> BigUint {
        &x.c[0] + &x.c[1] * &self.pk
    }
}

/// Default working precision for a congruence run up to index `n_max`:
/// the required verdicts are valuations >= 2(1 + v_p(n)), bounded by
/// 2(1 + floor(log_p n_max)); the slack of 4 absorbs cancellation in
/// intermediate products.
pub fn default_precision(p: u64, n_max: u64) -> u32 {
    let mut log = 0u32;
    let mut q = p;
    while q <= n_max {
        log += 1;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    2 * (1 + log) + 4
}

/// Hensel-lift the four roots of x^4 + 1 to precision p^K.
///
/// Roots are returned in deterministic order (smallest canonical
/// representative first). Seeds come from exhaustive search over F_p or
/// F_{p^2}.
pub fn hensel_omega8(p: u64, precision: u32) -> Result<(PadicCtx, Vec<PadicElem>)> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !finite_field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let precision = precision.max(1);
    let pk = BigUint::from(p).pow(precision);
    if p % 8 == 1 {
        let ctx = PadicCtx {
            p,
            precision,
            f: 1,
            pk: pk.clone(),
            wsq: None,
        };
        let mut roots = Vec::new();
        for s in 0..p {
            let s4 = BigUint::from(s).modpow(&BigUint::from(4u32), &BigUint::from(p));
            if (s4 + BigUint::one()) % BigUint::from(p) == BigUint::zero() {
                roots.push(lift_scalar_root(&ctx, s));
            }
        }
        debug_assert_eq!(roots.len(), 4);
        roots.sort_by_key(|r| ctx.rep(r));
        return Ok((ctx, roots));
    }

    // f = 2: work in the Galois ring (Z/p^K)[x]/(modulus), modulus the
    // deterministic irreducible quadratic from the finite-field layer.
    let fq = finite_field::make_field(p, 2)?;
    let m0 = fq.modulus_coeff(0);
    let m1 = fq.modulus_coeff(1);
    let g = GaloisRing {
        p,
        pk: pk.clone(),
        precision,
        m0: BigUint::from(m0),
        m1: BigUint::from(m1),
    };
    let seed = smallest_seed_root(&fq)?;
    let lifted = g.lift_root([BigUint::from(seed.0), BigUint::from(seed.1)]);
    // basis change x-basis -> {1, w}
    let b_inv = {
        let order = BigUint::from(p).pow(precision - 1) * BigUint::from(p - 1);
        lifted[1].modpow(&(order - BigUint::one()), &pk)
    };
    let wsq_x = g.mul(&lifted, &lifted);
    // w^2 = c0 + c1 w with c1 = (w^2)_x / w_x, c0 = (w^2)_0 - c1 w_0
    let c1 = &wsq_x[1] * &b_inv % &pk;
    let c0 = ((&wsq_x[0] + &pk * &c1) - (&c1 * &lifted[0] % &pk)) % &pk;
    let ctx = PadicCtx {
        p,
        precision,
        f: 2,
        pk: pk.clone(),
        wsq: Some((c0, c1)),
    };
    let w = PadicElem {
        c: [BigUint::zero(), BigUint::one()],
    };
    let w3 = ctx.pow(&w, 3);
    let neg = |x: &PadicElem| ctx.sub(&ctx.zero(), x);
    let mut roots = vec![w.clone(), w3.clone(), neg(&w), neg(&w3)];
    for r in &roots {
        let r4 = ctx.pow(r, 4);
        let want = ctx.sub(&ctx.zero(), &ctx.from_u64(1));
        debug_assert_eq!(r4, want, "lifted root check");
    }
    roots.sort_by_key(|r| ctx.rep(r));
    Ok((ctx, roots))
}

fn lift_scalar_root(ctx: &PadicCtx, seed: u64) -> PadicElem {
    let pk = &ctx.pk;
    let mut r = BigUint::from(seed);
    for _ in 0..(ctx.precision.ilog2() + 2) {
        // r <- r - (r^4+1)/(4r^3)
        let r3 = r.modpow(&BigUint::from(3u32), pk);
        let f = (r.modpow(&BigUint::from(4u32), pk) + BigUint::one()) % pk;
        let fp = BigUint::from(4u32) * &r3 % pk;
        let order = BigUint::from(ctx.p).pow(ctx.precision - 1) * BigUint::from(ctx.p - 1);
        let fp_inv = fp.modpow(&(order - BigUint::one()), pk);
        let delta = f * fp_inv % pk;
        r = (&r + pk - delta) % pk;
    }
    debug_assert!(
        (r.modpow(&BigUint::from(4u32), pk) + BigUint::one()) % pk == BigUint::zero()
    );
    PadicElem {
        c: [r, BigUint::zero()],
    }
}

/// Smallest (index order) root of x^4 = -1 in F_{p^2}.
fn smallest_seed_root(fq: &FieldCtx) -> Result<(u64, u64)> {
    for idx in 0..fq.order() {
        let x = fq.element_from_index(idx);
        let x4 = fq.pow(&x, 4);
        if fq.is_minus_one(&x4) {
            let c = fq.coeff_vec(&x);
            return Ok((c[0], c[1]));
        }
    }
    Err(Error::TraceDataInconsistent(
        "x^4 + 1 has no root in F_{p^2}".into(),
    ))
}

/// (Z/p^K)[x]/(x^2 + m1 x + m0) on the x-basis, used only while lifting.
struct GaloisRing {
    p: u64,
    pk: BigUint,
    precision: u32,
    m0: BigUint,
    m1: BigUint,
}

impl GaloisRing {
    fn mul(&self, a: &[BigUint; 2], b: &[BigUint; 2]) -> [BigUint; 2] {
        let pk = &self.pk;
        let cross = &a[1] * &b[1] % pk;
        // x^2 = -m1 x - m0
        let r0 = ((&a[0] * &b[0]) % pk + pk - (&cross * &self.m0) % pk) % pk;
        let r1 = ((&a[0] * &b[1] + &a[1] * &b[0]) % pk + pk - (&cross * &self.m1) % pk) % pk;
        [r0, r1]
    }

    fn conj(&self, a: &[BigUint; 2]) -> [BigUint; 2] {
        // other root of the modulus: -m1 - x
        let pk = &self.pk;
        let a0 = (&a[0] + pk - (&a[1] * &self.m1) % pk) % pk;
        let a1 = (pk - &a[1] % pk) % pk;
        [a0, a1]
    }

    fn inv(&self, a: &[BigUint; 2]) -> [BigUint; 2] {
        let pk = &self.pk;
        let c = self.conj(a);
        let n = self.mul(a, &c);
        debug_assert!(n[1].is_zero());
        let order = BigUint::from(self.p).pow(self.precision - 1) * BigUint::from(self.p - 1);
        let n_inv = n[0].modpow(&(order - BigUint::one()), pk);
        [&c[0] * &n_inv % pk, &c[1] * &n_inv % pk]
    }

    fn lift_root(&self, seed: [BigUint; 2]) -> [BigUint; 2] {
        let pk = &self.pk;
        let mut r = seed;
        for _ in 0..(self.precision.ilog2() + 2) {
            let r2 = self.mul(&r, &r);
            let r3 = self.mul(&r2, &r);
            let r4 = self.mul(&r2, &r2);
            let f = [(&r4[0] + BigUint::one()) % pk, r4[1].clone()];
            let fp = [&r3[0] * BigUint::from(4u32) % pk, &r3[1] * BigUint::from(4u32) % pk];
            let delta = self.mul(&f, &self.inv(&fp));
            r = [
                (&r[0] + pk - &delta[0]) % pk,
                (&r[1] + pk - &delta[1]) % pk,
            ];
        }
        let r2 = self.mul(&r, &r);
        let r4 = self.mul(&r2, &r2);
        debug_assert!(((&r4[0] + BigUint::one()) % pk).is_zero() && r4[1].is_zero());
        r
    }
}

/// v_p of a rational with denominator prime to p, up to the cap K.
pub fn rational_valuation(ctx: &PadicCtx, r: &Rat) -> Result<Valuation> {
    Ok(ctx.valuation(&ctx.from_rat(r)?))
}

pub fn biguint_to_u64(b: &BigUint) -> Option<u64> {
    b.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;

    #[test]
    fn roots_mod_17_level_1() {
        let (ctx, roots) = hensel_omega8(17, 1).unwrap();
        assert_eq!(ctx.f, 1);
        let got: Vec<u64> = roots.iter().map(|r| r.c[0].to_u64().unwrap()).collect();
        assert_eq!(got, vec![2, 8, 9, 15]);
    }

    #[test]
    fn no_root_mod_5_degree_two() {
        let (ctx, roots) = hensel_omega8(5, 1).unwrap();
        assert_eq!(ctx.f, 2);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            let r4 = ctx.pow(r, 4);
            let minus_one = ctx.sub(&ctx.zero(), &ctx.from_u64(1));
            assert_eq!(r4, minus_one);
        }
    }

    #[test]
    fn lift_mod_289() {
        let (ctx, roots) = hensel_omega8(17, 2).unwrap();
        // the root congruent to 2 mod 17 lifts so that r^4 = -1 mod 289
        let r = roots
            .iter()
            .find(|r| (&r.c[0] % BigUint::from(17u32)) == BigUint::from(2u32))
            .unwrap();
        let r4 = ctx.pow(r, 4);
        let minus_one = ctx.sub(&ctx.zero(), &ctx.from_u64(1));
        assert_eq!(r4, minus_one);
    }

    #[test]
    fn valuation_examples() {
        let (ctx, _) = hensel_omega8(3, 5).unwrap();
        let x = ctx.from_rat(&rat(18, 1)).unwrap();
        assert_eq!(ctx.valuation(&x), Valuation::Exact(2));
        assert_eq!(ctx.valuation(&ctx.zero()), Valuation::AtLeast(5));
    }

    #[test]
    fn valuation_unit_times_p() {
        let (ctx, roots) = hensel_omega8(13, 3).unwrap();
        // 13 * (1 + w), w a unit root -> valuation exactly 1
        let one_plus_w = ctx.add(&ctx.from_u64(1), &roots[0]);
        let x = ctx.mul(&ctx.from_u64(13), &one_plus_w);
        assert_eq!(ctx.valuation(&x), Valuation::Exact(1));
    }

    #[test]
    fn embed_examples() {
        let (ctx, roots) = hensel_omega8(17, 1).unwrap();
        // i = w8^2 -> 4 mod 17 under the root 2
        let r2 = roots
            .iter()
            .find(|r| r.c[0] == BigUint::from(2u32))
            .unwrap();
        let img = ctx.embed(&NumberFieldElem::i(), r2).unwrap();
        assert_eq!(img.c[0], BigUint::from(4u32));
        // rational constants map to themselves
        let seven = ctx.embed(&NumberFieldElem::from_int(7), &roots[0]).unwrap();
        assert_eq!(seven.c[0], BigUint::from(7u32));
        // 1/2 mod 3 = 2
        let (ctx3, roots3) = hensel_omega8(3, 1).unwrap();
        let half = ctx3
            .embed(&NumberFieldElem::from_rat(rat(1, 2)), &roots3[0])
            .unwrap();
        assert_eq!(half.c[0], BigUint::from(2u32));
    }

    #[test]
    fn embed_rejects_non_p_integral() {
        let (ctx, roots) = hensel_omega8(3, 2).unwrap();
        let res = ctx.embed(&NumberFieldElem::from_rat(rat(1, 3)), &roots[0]);
        assert!(matches!(res, Err(Error::NotPIntegral(3))));
    }

    #[test]
    fn embed_is_ring_homomorphism() {
        for p in [5u64, 7, 13, 17] {
            let (ctx, roots) = hensel_omega8(p, 4).unwrap();
            let mut state = 0xdeadbeefcafef00du64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % 23) as i64 - 11
            };
            for _ in 0..25 {
                let a = NumberFieldElem {
                    coords: [
                        rat(next(), 1),
                        rat(next(), 1),
                        rat(next(), 2),
                        rat(next(), 1),
                    ],
                };
                let b = NumberFieldElem {
                    coords: [
                        rat(next(), 1),
                        rat(next(), 4),
                        rat(next(), 1),
                        rat(next(), 1),
                    ],
                };
                let r = &roots[1];
                let sum = ctx.embed(&(a.clone() + b.clone()), r).unwrap();
                let prod = ctx.embed(&(a.clone() * b.clone()), r).unwrap();
                let ea = ctx.embed(&a, r).unwrap();
                let eb = ctx.embed(&b, r).unwrap();
                assert_eq!(sum, ctx.add(&ea, &eb));
                assert_eq!(prod, ctx.mul(&ea, &eb));
            }
        }
    }

    #[test]
    fn conjugate_matches_root_powers() {
        for p in [5u64, 13, 17] {
            let (ctx, roots) = hensel_omega8(p, 3).unwrap();
            let a = NumberFieldElem::sqrt_m2() + NumberFieldElem::i().scale(&rat(3, 2));
            let r = &roots[0];
            for k in [1u64, 3, 5, 7] {
                let lhs = ctx.embed(&a.galois_conjugate(k).unwrap(), r).unwrap();
                let rk = ctx.pow(r, k);
                let rhs = ctx.embed(&a, &rk).unwrap();
                assert_eq!(lhs, rhs, "p={} k={}", p, k);
            }
        }
    }

    #[test]
    fn valuation_additive_on_products() {
        let (ctx, roots) = hensel_omega8(7, 8).unwrap();
        let w = &roots[0];
        for (va, vb) in [(1u32, 2u32), (0, 3), (2, 1)] {
            let a = ctx.mul(&ctx.from_u64(7u64.pow(va)), &ctx.add(&ctx.from_u64(3), w));
            let b = ctx.mul(&ctx.from_u64(7u64.pow(vb)), &ctx.add(&ctx.from_u64(1), w));
            let prod = ctx.mul(&a, &b);
            assert_eq!(ctx.valuation(&prod), Valuation::Exact(va + vb));
        }
    }

    #[test]
    fn rejects_p_equal_two() {
        assert!(matches!(hensel_omega8(2, 3), Err(Error::EvenPrime)));
    }

    #[test]
    fn default_precision_formula() {
        assert_eq!(default_precision(3, 100), 14); // floor(log3 100) = 4
        assert_eq!(default_precision(17, 100), 8); // floor(log17 100) = 1
    }
}
