//! Characteristic polynomials of Frobenius from trace data.
//!
//! Power sums s_1..s_d determine e_1..e_d through Newton's identities; the
//! weight-3 functional equation (the root multiset is closed under
//! a -> p^2/a) together with the determinant chi_{-4}(p) p^{2d} supplies the
//! remaining coefficients, so traces beyond r = d are never needed. The
//! W = W+ (+) W- split is realized as exact integer polynomial division.

use crate::error::{Error, Result};
use crate::numfield::NumberFieldElem;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Monic integer polynomial, coefficients leading-first; all complex roots
/// have modulus p (weight 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub p: u64,
    pub coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits i64"))
            .collect()
    }

    /// Reduction mod 2 equals T^4 + 1 (the degree-4 case).
    pub fn is_t4_plus_one_mod_2(&self) -> bool {
        if self.degree() != 4 {
            return false;
        }
        let two = BigInt::from(2);
        let want = [1u8, 0, 0, 0, 1];
        self.coeffs
            .iter()
            .zip(want.iter())
            .all(|(c, &w)| ((c % &two) + &two) % &two == BigInt::from(w))
    }

    /// Exact functional-equation check: coeff[2d-k] * p^{2k} = coeff[k] * det
    /// for all k, with det the constant term, up to the (-1)^k sign bookkeeping
    /// already absorbed into the coefficients.
    pub fn is_self_inversive(&self) -> bool {
        let n = self.degree();
        let det = self.constant_term();
        let p2 = BigInt::from(self.p) * BigInt::from(self.p);
        // e_k = (-1)^k coeffs[k]; relation e_{n-k} = e_k det / p^{2k}
        for k in 0..=n {
            let ek = if k % 2 == 0 {
                self.coeffs[k].clone()
            } else {
                -self.coeffs[k].clone()
            };
            let em = if (n - k) % 2 == 0 {
                self.coeffs[n - k].clone()
            } else {
                -self.coeffs[n - k].clone()
            };
            let lhs = em * p2.pow(k as u32);
            let rhs = ek * det;
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// For p = 1 mod 8 the quartic must be the square of an integer
    /// quadratic; errors rather than guessing a nearest factorization.
    pub fn as_perfect_square(&self) -> Result<(BigInt, BigInt)> {
        if self.degree() != 4 {
            return Err(Error::NotPerfectSquare(self.p));
        }
        let two = BigInt::from(2);
        let c3 = &self.coeffs[1];
        let c2 = &self.coeffs[2];
        let c1 = &self.coeffs[3];
        let c0 = &self.coeffs[4];
        if (c3 % &two).is_zero() {
            let u = c3 / &two;
            let v2 = c2 - &u * &u;
            if (&v2 % &two).is_zero() {
                let v = v2 / &two;
                if &(&two * &u * &v) == c1 && &(&v * &v) == c0 {
                    return Ok((u, v));
                }
            }
        }
        Err(Error::NotPerfectSquare(self.p))
    }

    /// Power sums of the roots, s_1..s_r_max, by the Newton recursion.
    pub fn power_sums(&self, r_max: usize) -> Vec<i128> {
        let n = self.degree();
        let e: Vec<i128> = (0..=n)
            .map(|k| {
                let v = if k % 2 == 0 {
                    self.coeffs[k].clone()
                } else {
                    -self.coeffs[k].clone()
                };
                v.to_i128().expect("elementary symmetric fits i128")
            })
            .collect();
        let mut s = vec![0i128; r_max + 1];
        for m in 1..=r_max {
            let mut acc = 0i128;
            for i in 1..=m.min(n) {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                if i == m {
                    acc += sign * (m as i128) * e[m];
                } else {
                    acc += sign * e[i] * s[m - i];
                }
            }
            s[m] = acc;
        }
        s.truncate(r_max + 1);
        s.remove(0);
        s
    }
}

/// chi_{-4}(p) = (-1)^((p-1)/2) for odd p.
pub fn chi_minus_four(p: u64) -> i64 {
    if (p - 1) / 2 % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Build the degree-2d characteristic polynomial from traces s_1..s_d and
/// the determinant.
pub fn charpoly_from_traces(traces: &[i64], d: usize, p: u64, det: &BigInt) -> Result<CharPoly> {
    if traces.len() < d {
        return Err(Error::TraceDataInconsistent(format!(
            "need {} traces, have {}",
            d,
            traces.len()
        )));
    }
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=d {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * BigInt::from(traces[i - 1]);
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let kk = BigInt::from(k as u64);
        if (&acc % &kk) != BigInt::zero() {
            return Err(Error::TraceDataInconsistent(format!(
                "Newton identity gives non-integral e_{}",
                k
            )));
        }
        e.push(acc / kk);
    }
    // functional equation: e_{2d-k} = det e_k / p^{2k}
    let p2 = BigInt::from(p) * BigInt::from(p);
    let mut full = vec![BigInt::zero(); 2 * d + 1];
    for (k, v) in e.iter().enumerate() {
        full[k] = v.clone();
    }
    for k in 0..d {
        let num = det * &e[k];
        let den = p2.pow(k as u32);
        if (&num % &den) != BigInt::zero() {
            return Err(Error::TraceDataInconsistent(format!(
                "functional equation gives non-integral e_{}",
                2 * d - k
            )));
        }
        full[2 * d - k] = num / den;
    }
    let coeffs: Vec<BigInt> = full
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v })
        .collect();
    Ok(CharPoly { p, coeffs })
}

/// Exact quotient Char(rho4) / Char(rho2); any nonzero remainder aborts.
pub fn wminus_charpoly(rho4: &CharPoly, rho2: &CharPoly) -> Result<CharPoly> {
    if rho4.p != rho2.p {
        return Err(Error::TraceDataInconsistent("prime mismatch".into()));
    }
    let mut rem = rho4.coeffs.clone();
    let div = &rho2.coeffs;
    let qlen = rem.len() - div.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let c = rem[i].clone(); // divisor monic
        quot[i] = c.clone();
        for (j, dj) in div.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(CharPoly {
        p: rho4.p,
        coeffs: quot,
    })
}

/// Quadratic factor T^2 + b T + c with coefficients in Q(w8).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadFactor {
    pub b: NumberFieldElem,
    pub c: NumberFieldElem,
}

/// The factorization shape of the W- characteristic polynomial by residue
/// class: (T^2 - A T + p^2)^2 for p = 1 mod 8, else
/// (T^2 - A T - p^2)(T^2 + A T - p^2) with A in iZ or sqrt(-2) Z.
pub fn predicted_factorization(p: u64, a_p: &NumberFieldElem) -> (QuadFactor, QuadFactor) {
    let c = if p % 8 == 1 {
        NumberFieldElem::from_int((p * p) as i64)
    } else {
        NumberFieldElem::from_int(-((p * p) as i64))
    };
    let f1 = QuadFactor {
        b: -a_p.clone(),
        c: c.clone(),
    };
    let f2 = if p % 8 == 1 {
        f1.clone()
    } else {
        QuadFactor {
            b: a_p.clone(),
            c,
        }
    };
    (f1, f2)
}

/// Expand the product of the two quadratics; all coefficients must land in
/// the rational integers.
pub fn expand_factors(p: u64, f1: &QuadFactor, f2: &QuadFactor) -> Result<CharPoly> {
    let t3 = f1.b.clone() + f2.b.clone();
    let t2 = f1.c.clone() + f2.c.clone() + f1.b.clone() * f2.b.clone();
    let t1 = f1.b.clone() * f2.c.clone() + f2.b.clone() * f1.c.clone();
    let t0 = f1.c.clone() * f2.c.clone();
    let mut coeffs = vec![BigInt::one()];
    for v in [t3, t2, t1, t0] {
        let r = v.as_rational().ok_or(Error::NotRational)?;
        if !r.is_integer() {
            return Err(Error::NotRational);
        }
        coeffs.push(r.to_integer());
    }
    Ok(CharPoly { p, coeffs })
}

/// Numeric Weil check: every complex root has |root| within relative 1e-9
/// of p. Repeated roots are removed exactly first so the root finder works
/// at full precision.
pub fn weil_check(poly: &CharPoly) -> bool {
    let square_free = square_free_part(&poly.coeffs);
    let roots = durand_kerner(&square_free);
    let p = poly.p as f64;
    roots.iter().all(|z| (z.norm() - p).abs() <= 1e-9 * p)
}

fn square_free_part(coeffs: &[BigInt]) -> Vec<f64> {
    // rational gcd of P and P' (both primitive); division is exact
    let p: Vec<BigInt> = coeffs.to_vec();
    let dp: Vec<BigInt> = p[..p.len() - 1]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigInt::from((p.len() - 1 - i) as u64))
        .collect();
    let g = bigint_poly_gcd(&p, &dp);
    let q = bigint_poly_div_exact(&p, &g);
    q.iter()
        .map(|c| c.to_f64().expect("coefficient fits f64"))
        .collect()
}

fn bigint_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    use num_rational::BigRational;
    let to_rat = |v: &[BigInt]| -> Vec<BigRational> {
        v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let mut a = to_rat(a);
    let mut b = to_rat(b);
    let trim = |v: &mut Vec<BigRational>| {
        while v.first().map(|c| c.is_zero()) == Some(true) {
            v.remove(0);
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b, leading-first
        let lead = b[0].clone();
        while a.len() >= b.len() {
            let c = a[0].clone() / lead.clone();
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                a[j] = &a[j] - &t;
            }
            a.remove(0);
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    // clear denominators, primitive part
    if a.is_empty() {
        return vec![BigInt::one()];
    }
    let lead = a[0].clone();
    let monic: Vec<BigRational> = a.iter().map(|c| c / &lead).collect();
    let mut den = BigInt::one();
    for c in &monic {
        den = num_integer::lcm(den.clone(), c.denom().clone());
    }
    let ints: Vec<BigInt> = monic.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = num_integer::gcd(g.clone(), c.clone());
    }
    if g.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    if out[0].is_negative() {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

fn bigint_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    use num_rational::BigRational;
    let mut rem: Vec<BigRational> = a
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let div: Vec<BigRational> = b
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let qlen = rem.len() - div.len() + 1;
    let mut quot = vec![BigRational::from_integer(BigInt::zero()); qlen];
    for i in 0..qlen {
        let c = &rem[i] / &div[0];
        quot[i] = c.clone();
        for (j, dj) in div.iter().enumerate() {
            let t = &c * dj;
            rem[i + j] = &rem[i + j] - &t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "square-free division exact");
    quot.iter().map(|c| c.to_integer()).collect()
}

/// Durand-Kerner on a monic real polynomial given leading-first.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let scale = coeffs
        .iter()
        .skip(1)
        .map(|c| c.abs().powf(1.0 / (n as f64)))
        .fold(1.0f64, f64::max);
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in coeffs {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9) * scale;
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(coeffs[0], 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 * scale.max(1.0) {
            break;
        }
    }
    roots
}
