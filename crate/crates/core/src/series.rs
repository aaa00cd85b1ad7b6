//! Exact truncated Puiseux series over Q(w8).
//!
//! A series is a map from integer indices n to coefficients, representing
//! sum c_n q^(n/m) for n < trunc; nothing is known at or beyond trunc.
//! Binary operations merge exponent lattices to the lcm and propagate the
//! valid window: a product of series valid below b1, b2 with leading
//! exponents l1, l2 is valid below min(b1 + l2, b2 + l1).
//!
//! Inversion and n-th roots run on a dense window with Newton-style
//! precision doubling; roots require leading coefficient 1.

use crate::error::{Error, Result};
use crate::numfield::{NumberFieldElem, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    /// Exponent lattice denominator: index n stands for q^(n/m).
    pub m: u32,
    coeffs: BTreeMap<i64, NumberFieldElem>,
    /// Exclusive upper bound of known indices.
    pub trunc: i64,
}

impl PuiseuxSeries {
    pub fn zero(m: u32, trunc: i64) -> Self {
        Self {
            m,
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(m: u32, trunc: i64) -> Self {
        Self::monomial(m, 0, NumberFieldElem::one(), trunc)
    }

    pub fn monomial(m: u32, index: i64, coeff: NumberFieldElem, trunc: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() && index < trunc {
            coeffs.insert(index, coeff);
        }
        Self { m, coeffs, trunc }
    }

    pub fn from_terms(m: u32, terms: &[(i64, NumberFieldElem)], trunc: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in terms {
            if !c.is_zero() && *i < trunc {
                coeffs.insert(*i, c.clone());
            }
        }
        Self { m, coeffs, trunc }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<(i64, &NumberFieldElem)> {
        self.coeffs.iter().next().map(|(k, v)| (*k, v))
    }

    fn lead_or_trunc(&self) -> i64 {
        self.leading().map(|(k, _)| k).unwrap_or(self.trunc)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &NumberFieldElem)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at index n; zero below trunc, error at or beyond it.
    pub fn coeff(&self, n: i64) -> Result<NumberFieldElem> {
        if n >= self.trunc {
            return Err(Error::InsufficientTruncation {
                need: n,
                have: self.trunc,
            });
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_default())
    }

    pub fn coeff_unchecked(&self, n: i64) -> NumberFieldElem {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    /// Lift to a finer lattice: new_m must be a multiple of m.
    pub fn rebase(&self, new_m: u32) -> Self {
        assert!(new_m % self.m == 0, "rebase target must refine the lattice");
        let k = (new_m / self.m) as i64;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(i, c)| (i * k, c.clone()))
            .collect();
        Self {
            m: new_m,
            coeffs,
            trunc: self.trunc.saturating_mul(k),
        }
    }

    /// Move to any lattice in which every exponent is representable;
    /// errors when an index does not land on the target lattice.
    pub fn rebase_exact(&self, new_m: u32) -> Result<Self> {
        if new_m % self.m == 0 {
            return Ok(self.rebase(new_m));
        }
        let mut coeffs = BTreeMap::new();
        for (i, c) in &self.coeffs {
            let num = i * new_m as i64;
            if num % self.m as i64 != 0 {
                return Err(Error::LatticeMismatch {
                    index: *i,
                    target: new_m,
                });
            }
            coeffs.insert(num / self.m as i64, c.clone());
        }
        // ceil(trunc * new_m / m)
        let t = self.trunc * new_m as i64;
        let trunc = t.div_ceil(self.m as i64);
        Ok(Self {
            m: new_m,
            coeffs,
            trunc,
        })
    }

    /// Reinterpret indices on a new lattice denominator (formal substitution
    /// q -> q^(old_m/new_m); used for the level-5 convention q -> q^(1/5)).
    pub fn with_exponent_denominator(&self, new_m: u32) -> Self {
        Self {
            m: new_m,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc,
        }
    }

    /// Declare validity to a larger window. Only sound inside contractive
    /// iterations (Newton), where the caller certifies convergence.
    pub(crate) fn with_trunc(mut self, trunc: i64) -> Self {
        self.trunc = trunc;
        self.coeffs.retain(|k, _| *k < trunc);
        self
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = (a.m as i64).lcm(&(b.m as i64)) as u32;
        (a.rebase(m), b.rebase(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::unify(self, other);
        a.trunc = a.trunc.min(b.trunc);
        for (i, c) in b.coeffs {
            if i >= a.trunc {
                continue;
            }
            let entry = a.coeffs.entry(i).or_default();
            *entry = entry.clone() + c;
            if entry.is_zero() {
                a.coeffs.remove(&i);
            }
        }
        a.coeffs.retain(|k, _| *k < a.trunc);
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_nf(&-NumberFieldElem::one()))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero(self.m, self.trunc);
        }
        Self {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (*i, c.scale(r)))
                .collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale_nf(&self, s: &NumberFieldElem) -> Self {
        if s.is_zero() {
            return Self::zero(self.m, self.trunc);
        }
        Self {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (*i, c.clone() * s.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            trunc: self.trunc,
        }
    }

    pub fn shift(&self, delta: i64) -> Self {
        Self {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (i + delta, c.clone()))
                .collect(),
            trunc: self.trunc + delta,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let trunc = (a.trunc.saturating_add(b.lead_or_trunc()))
            .min(b.trunc.saturating_add(a.lead_or_trunc()));
        let av: Vec<(i64, &NumberFieldElem)> = a.coeffs.iter().map(|(i, c)| (*i, c)).collect();
        let bv: Vec<(i64, &NumberFieldElem)> = b.coeffs.iter().map(|(i, c)| (*i, c)).collect();
        let mut out: BTreeMap<i64, NumberFieldElem> = BTreeMap::new();
        for (i, ci) in &av {
            if i + bv.first().map(|(j, _)| *j).unwrap_or(trunc) >= trunc {
                break;
            }
            for (j, cj) in &bv {
                let k = i + j;
                if k >= trunc {
                    break;
                }
                let prod = (*ci).clone() * (*cj).clone();
                if prod.is_zero() {
                    continue;
                }
                let entry = out.entry(k).or_default();
                *entry = entry.clone() + prod;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Self {
            m: a.m,
            coeffs: out,
            trunc,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        // window of a power: every factor contributes its leading exponent
        let mut acc = Self::one(self.m, self.trunc + (e.max(1) as i64 - 1) * self.lead_or_trunc());
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            return Self::one(self.m, self.trunc);
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the leading coefficient must be invertible and
    /// the series nonzero somewhere in its window.
    pub fn inv(&self) -> Result<Self> {
        let (lead, c0) = self.leading().ok_or(Error::ZeroLeadingCoefficient)?;
        let c0_inv = c0.inv()?;
        let window = self.trunc - lead; // relative length
        let mut u = vec![NumberFieldElem::zero(); window as usize];
        for (i, c) in &self.coeffs {
            u[(i - lead) as usize] = c.clone() * c0_inv.clone();
        }
        // recurrence: b0 = 1; b_k = -sum_{j=1..k} u_j b_{k-j}
        let mut b = vec![NumberFieldElem::zero(); window as usize];
        b[0] = NumberFieldElem::one();
        for k in 1..window as usize {
            let mut acc = NumberFieldElem::zero();
            for j in 1..=k {
                if u[j].is_zero() || b[k - j].is_zero() {
                    continue;
                }
                acc = acc + u[j].clone() * b[k - j].clone();
            }
            b[k] = -acc;
        }
        let coeffs: BTreeMap<i64, NumberFieldElem> = b
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 - lead, c.clone() * c0_inv.clone()))
            .collect();
        Ok(Self {
            m: self.m,
            coeffs,
            trunc: -lead + window,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Unique n-th root with leading coefficient 1, by Newton iteration with
    /// window doubling. Enlarges the lattice when the leading exponent is not
    /// divisible by n.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        let (lead, c0) = self.leading().ok_or(Error::ZeroLeadingCoefficient)?;
        if *c0 != NumberFieldElem::one() {
            return Err(Error::RootLeadingCoefficient(format!("{}", c0)));
        }
        let (work, lead) = if lead % n as i64 == 0 {
            (self.clone(), lead)
        } else {
            let re = self.rebase(self.m * n);
            let l = lead * n as i64;
            (re, l)
        };
        let window = (work.trunc - lead) as usize;
        // dense relative tail u with u[0] = 1
        let mut u = vec![NumberFieldElem::zero(); window];
        for (i, c) in &work.coeffs {
            u[(i - lead) as usize] = c.clone();
        }
        let m = work.m;
        let u_series = |len: usize| {
            PuiseuxSeries::from_terms(
                m,
                &u.iter()
                    .take(len)
                    .enumerate()
                    .map(|(i, c)| (i as i64, c.clone()))
                    .collect::<Vec<_>>(),
                len as i64,
            )
        };
        let inv_n = Rat::new(1.into(), (n as i64).into());
        let frac = Rat::new(((n - 1) as i64).into(), (n as i64).into());
        let mut root = PuiseuxSeries::one(m, 1);
        let mut prec: usize = 1;
        while prec < window {
            prec = (prec * 2).min(window);
            let target = u_series(prec);
            let padded = root.clone().with_trunc(prec as i64);
            // r <- r (n-1)/n + u / (n r^(n-1))
            let rpow = padded.pow(n - 1).with_trunc(prec as i64);
            let correction = target.mul(&rpow.inv()?).scale(&inv_n);
            root = padded.scale(&frac).add(&correction).with_trunc(prec as i64);
        }
        // verify: root^n = u on the window (cheap relative to construction)
        debug_assert!({
            let diff = root.pow(n).with_trunc(window as i64).sub(&u_series(window));
            diff.is_zero()
        });
        let shifted = root.shift(lead / n as i64);
        let final_trunc = lead / n as i64 + window as i64;
        Ok(shifted.with_trunc(final_trunc))
    }

    /// Indices of nonzero coefficients all congruent to `class` mod `modulus`.
    pub fn support_in_class(&self, class: i64, modulus: i64) -> bool {
        self.coeffs
            .keys()
            .all(|k| k.rem_euclid(modulus) == class.rem_euclid(modulus))
    }

    /// All coefficients rational with denominator a power of 2.
    pub fn is_two_integral_rational(&self) -> bool {
        self.coeffs.values().all(|c| {
            c.is_rational() && {
                let mut d = c.coords[0].denom().clone();
                let two = num_bigint::BigInt::from(2);
                while (&d % &two).is_zero() {
                    d /= &two;
                }
                d.abs() == num_bigint::BigInt::from(1)
            }
        })
    }
}

impl std::fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().take(8) {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({}) q^({}/{})", c, i, self.m)?;
            first = false;
        }
        if self.coeffs.len() > 8 {
            write!(f, " + ...")?;
        }
        write!(f, " [O(q^({}/{}))]", self.trunc, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;

    fn nf(n: i64) -> NumberFieldElem {
        NumberFieldElem::from_int(n)
    }

    #[test]
    fn product_difference_of_squares() {
        let a = PuiseuxSeries::from_terms(1, &[(0, nf(1)), (1, nf(1))], 10);
        let b = PuiseuxSeries::from_terms(1, &[(0, nf(1)), (1, nf(-1))], 10);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0).unwrap(), nf(1));
        assert_eq!(p.coeff(1).unwrap(), nf(0));
        assert_eq!(p.coeff(2).unwrap(), nf(-1));
    }

    #[test]
    fn fractional_exponent_addition() {
        // q^(1/8) * q^(3/8) = q^(1/2)
        let a = PuiseuxSeries::monomial(8, 1, nf(1), 100);
        let b = PuiseuxSeries::monomial(8, 3, nf(1), 100);
        let p = a.mul(&b);
        assert_eq!(p.m, 8);
        assert_eq!(p.leading().unwrap().0, 4);
    }

    #[test]
    fn geometric_series_inverse() {
        let a = PuiseuxSeries::from_terms(1, &[(0, nf(1)), (1, nf(-1))], 12);
        let inv = a.inv().unwrap();
        for k in 0..12 {
            assert_eq!(inv.coeff(k).unwrap(), nf(1), "k={}", k);
        }
    }

    #[test]
    fn inverse_respects_window() {
        // leading exponent 2 costs window on both sides
        let a = PuiseuxSeries::from_terms(1, &[(2, nf(1)), (3, nf(5))], 10);
        let inv = a.inv().unwrap();
        assert_eq!(inv.leading().unwrap().0, -2);
        assert_eq!(inv.trunc, 10 - 4);
        let prod = a.mul(&inv);
        assert_eq!(prod.coeff(0).unwrap(), nf(1));
        for k in 1..prod.trunc {
            assert_eq!(prod.coeff(k).unwrap(), nf(0));
        }
    }

    #[test]
    fn perfect_square_root() {
        let a = PuiseuxSeries::from_terms(1, &[(0, nf(1)), (1, nf(2)), (2, nf(1))], 16);
        let r = a.nth_root(2).unwrap();
        assert_eq!(r.coeff(0).unwrap(), nf(1));
        assert_eq!(r.coeff(1).unwrap(), nf(1));
        for k in 2..r.trunc {
            assert_eq!(r.coeff(k).unwrap(), nf(0));
        }
    }

    #[test]
    fn binomial_root_with_shift() {
        // sqrt(q^2 (1+q)) = q (1 + q/2 - q^2/8 + ...)
        let a = PuiseuxSeries::from_terms(1, &[(2, nf(1)), (3, nf(1))], 12);
        let r = a.nth_root(2).unwrap();
        assert_eq!(r.leading().unwrap().0, 1);
        assert_eq!(r.coeff(2).unwrap(), NumberFieldElem::from_rat(rat(1, 2)));
        assert_eq!(r.coeff(3).unwrap(), NumberFieldElem::from_rat(rat(-1, 8)));
    }

    #[test]
    fn root_requires_unit_leading_coefficient() {
        let a = PuiseuxSeries::from_terms(1, &[(0, nf(4)), (1, nf(1))], 8);
        assert!(matches!(
            a.nth_root(2),
            Err(Error::RootLeadingCoefficient(_))
        ));
    }

    #[test]
    fn root_enlarges_lattice() {
        // sqrt(q^(1/2)(1 + q^(1/2))) on m = 2: leading index 1 is odd
        let a = PuiseuxSeries::from_terms(2, &[(1, nf(1)), (2, nf(1))], 9);
        let r = a.nth_root(2).unwrap();
        assert_eq!(r.m, 4);
        assert_eq!(r.leading().unwrap().0, 1); // q^(1/4)
    }

    #[test]
    fn random_roots_roundtrip() {
        let mut state = 0xabcdef12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 9) as i64 - 4
        };
        for n in [2u32, 3, 4] {
            for _ in 0..8 {
                let terms: Vec<(i64, NumberFieldElem)> = (1..14)
                    .map(|i| (i, nf(next())))
                    .chain(std::iter::once((0, nf(1))))
                    .collect();
                let a = PuiseuxSeries::from_terms(1, &terms, 14);
                let r = a.nth_root(n).unwrap();
                let back = r.pow(n);
                let diff = back.sub(&a);
                assert!(diff.is_zero(), "n={} diff={}", n, diff);
            }
        }
    }

    #[test]
    fn coeff_beyond_window_errors() {
        let a = PuiseuxSeries::one(1, 5);
        assert!(matches!(
            a.coeff(5),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn lattice_merge_on_add() {
        let a = PuiseuxSeries::monomial(8, 1, nf(1), 80);
        let b = PuiseuxSeries::monomial(20, 1, nf(1), 200);
        let s = a.add(&b);
        assert_eq!(s.m, 40);
        assert_eq!(s.coeff(5).unwrap(), nf(1)); // q^(1/8) = q^(5/40)
        assert_eq!(s.coeff(2).unwrap(), nf(1)); // q^(1/20) = q^(2/40)
    }
}
