//! Arithmetic in the cyclotomic field Q(w8), where w8 is a primitive 8th root
//! of unity, on the power basis {1, w8, w8^2, w8^3} with w8^4 = -1.
//!
//! The subfields Q(i), Q(sqrt 2), Q(sqrt -2) are reached through
//! i = w8^2, sqrt(2) = w8 - w8^3, sqrt(-2) = w8 + w8^3. Subfield membership
//! is a predicate on the coordinates, not a separate type, so a single code
//! path serves all four residue classes of odd primes mod 8.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

/// a + b w8 + c w8^2 + d w8^3 with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NumberFieldElem {
    pub coords: [Rat; 4],
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

impl NumberFieldElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut coords: [Rat; 4] = Default::default();
        coords[0] = r;
        Self { coords }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_i64(n))
    }

    /// w8 itself.
    pub fn omega8() -> Self {
        Self::basis(1)
    }

    /// i = w8^2.
    pub fn i() -> Self {
        Self::basis(2)
    }

    /// sqrt(2) = w8 - w8^3.
    pub fn sqrt2() -> Self {
        let mut e = Self::basis(1);
        e.coords[3] = -rat_i64(1);
        e
    }

    /// sqrt(-2) = w8 + w8^3.
    pub fn sqrt_m2() -> Self {
        let mut e = Self::basis(1);
        e.coords[3] = rat_i64(1);
        e
    }

    fn basis(k: usize) -> Self {
        let mut coords: [Rat; 4] = Default::default();
        coords[k] = rat_i64(1);
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut coords: [Rat; 4] = Default::default();
        for k in 0..4 {
            coords[k] = &self.coords[k] * r;
        }
        Self { coords }
    }

    /// Image under the Galois automorphism w8 -> w8^k, k in {1,3,5,7}.
    pub fn galois_conjugate(&self, k: u64) -> Result<Self> {
        if !matches!(k, 1 | 3 | 5 | 7) {
            return Err(Error::BadConjugateExponent(k));
        }
        let mut coords: [Rat; 4] = Default::default();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = (i as u64 * k) % 8;
            let (pos, neg) = ((m % 4) as usize, m >= 4);
            if neg {
                coords[pos] = &coords[pos] - c;
            } else {
                coords[pos] = &coords[pos] + c;
            }
        }
        Ok(Self { coords })
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let b = self.galois_conjugate(3)? * self.galois_conjugate(5)? * self.galois_conjugate(7)?;
        let norm = self.clone() * b.clone();
        debug_assert!(norm.is_rational(), "norm must land in Q");
        let n = norm.coords[0].clone();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(b.scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// The four archimedean absolute values, via w8 -> exp(k pi i / 4).
    pub fn abs_embeddings(&self) -> [f64; 4] {
        let mut out = [0f64; 4];
        for (idx, k) in [1u32, 3, 5, 7].iter().enumerate() {
            let (mut re, mut im) = (0f64, 0f64);
            for (i, c) in self.coords.iter().enumerate() {
                let theta = std::f64::consts::PI / 4.0 * (*k as f64) * (i as f64);
                let cf = rat_to_f64(c);
                re += cf * theta.cos();
                im += cf * theta.sin();
            }
            out[idx] = (re * re + im * im).sqrt();
        }
        out
    }

    /// Largest power of `p` dividing every coordinate denominator is zero,
    /// i.e. all coordinates are p-integral.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        self.coords
            .iter()
            .all(|c| (c.denom() % &pb) != BigInt::zero())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // good enough for size checks on small algebraic integers
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

impl Add for NumberFieldElem {
    type Output = NumberFieldElem;
    fn add(self, rhs: Self) -> Self {
        let mut coords: [Rat; 4] = Default::default();
        for k in 0..4 {
            coords[k] = &self.coords[k] + &rhs.coords[k];
        }
        Self { coords }
    }
}

impl Sub for NumberFieldElem {
    type Output = NumberFieldElem;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> Self {
        let mut coords: [Rat; 4] = Default::default();
        for k in 0..4 {
            coords[k] = -self.coords[k].clone();
        }
        Self { coords }
    }
}

impl Mul for NumberFieldElem {
    type Output = NumberFieldElem;
    fn mul(self, rhs: Self) -> Self {
        // rational fast paths dominate in series arithmetic
        if self.is_rational() {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coords[0]);
        }
        let mut coords: [Rat; 4] = Default::default();
        for i in 0..4 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.coords[j].is_zero() {
                    continue;
                }
                let prod = &self.coords[i] * &rhs.coords[j];
                let k = i + j;
                if k < 4 {
                    coords[k] = &coords[k] + &prod;
                } else {
                    coords[k - 4] = &coords[k - 4] - &prod;
                }
            }
        }
        Self { coords }
    }
}

impl fmt::Display for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "w8", "w8^2", "w8^3"];
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if i == 0 || !a.is_one() {
                write!(f, "{}", a)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", names[i])?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_m2_squares_to_minus_two() {
        let s = NumberFieldElem::sqrt_m2();
        assert_eq!(s.clone() * s, NumberFieldElem::from_int(-2));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = NumberFieldElem::sqrt2();
        assert_eq!(s.clone() * s, NumberFieldElem::from_int(2));
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = NumberFieldElem::i();
        assert_eq!(i.clone() * i, NumberFieldElem::from_int(-1));
    }

    #[test]
    fn identity_division() {
        let x = NumberFieldElem::one() + NumberFieldElem::omega8();
        assert_eq!(x.div(&x).unwrap(), NumberFieldElem::one());
    }

    #[test]
    fn division_by_zero_errors() {
        let x = NumberFieldElem::one();
        assert!(matches!(
            x.div(&NumberFieldElem::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn conjugate_examples() {
        // i -> -i under w8 -> w8^3
        let i = NumberFieldElem::i();
        assert_eq!(i.galois_conjugate(3).unwrap(), -NumberFieldElem::i());
        // sqrt2 fixed by w8 -> w8^7 = w8^-1
        let s = NumberFieldElem::sqrt2();
        assert_eq!(s.galois_conjugate(7).unwrap(), s);
        // rationals fixed
        let five = NumberFieldElem::from_int(5);
        assert_eq!(five.galois_conjugate(5).unwrap(), five);
        // bad exponent
        assert!(NumberFieldElem::one().galois_conjugate(2).is_err());
    }

    #[test]
    fn inverse_roundtrip_random() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        for _ in 0..200 {
            let coords = [
                rat_i64(next()),
                rat_i64(next()),
                rat_i64(next()),
                rat_i64(next()),
            ];
            let x = NumberFieldElem { coords };
            if x.is_zero() {
                continue;
            }
            let prod = x.clone() * x.inv().unwrap();
            assert_eq!(prod, NumberFieldElem::one());
        }
    }

    #[test]
    fn mul_matches_conjugate_homomorphism() {
        let a = NumberFieldElem::sqrt_m2() + NumberFieldElem::from_int(3);
        let b = NumberFieldElem::i() - NumberFieldElem::omega8();
        for k in [1, 3, 5, 7] {
            let lhs = (a.clone() * b.clone()).galois_conjugate(k).unwrap();
            let rhs = a.galois_conjugate(k).unwrap() * b.galois_conjugate(k).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
