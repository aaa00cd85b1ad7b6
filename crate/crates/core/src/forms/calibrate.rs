//! Calibration of the weight-3 pair (E1, E2) on the level-5 curve, via the
//! classical j-invariant.
//!
//! The hauptmodul t = E1/E2 is recovered as the unique Laurent series
//! t = Q^-1 (1 + ...) solving j(q) = j_model(t), where
//! j_model(t) = -C(t)^3 / (t^5 (1 + 11t - t^2)) is read off the fibration
//! (C = 1 + 12t + 14t^2 - 12t^3 + t^4 is the c4-numerator; twisting by t
//! does not move j). The quadratic t^2 - 11t - 1 vanishes exactly at the
//! hauptmodul values of the two conjugate width-1 cusps, so the unique
//! Eisenstein combination f30 vanishing to order 3 at infinity yields
//!
//!   E2 = f30 * (t^2 - 11t - 1),   E1 = t * E2,
//!
//! with divisors concentrated away from the infinity and -2 cusps
//! respectively. Integrality of both expansions, membership of E1 in the
//! Eisenstein space, and the j-oracle residual certify the calibration; the
//! congruence pipeline at p = 3 re-certifies it downstream.

use super::eisenstein;
use super::eta::eta_power;
use crate::error::{Error, Result};
use crate::numfield::{rat_i64, NumberFieldElem, Rat};
use crate::series::PuiseuxSeries;
use num_traits::{One, Zero};

/// Numerator of c4 for the fibration, as a polynomial in the hauptmodul.
const C4_NUM: [i64; 5] = [1, 12, 14, -12, 1];
/// t^2 - 11t - 1, low-to-high.
const CUSP_QUAD: [i64; 3] = [-1, -11, 1];

/// Calibrated data, all on the lattice Q = q^(1/5).
#[derive(Clone, Debug)]
pub struct Calibration {
    pub e1: PuiseuxSeries,
    pub e2: PuiseuxSeries,
    pub t: PuiseuxSeries,
    /// Number of valid Q-indices (exclusive bound of e2's window).
    pub q_window: i64,
}

fn eval_int_poly(coeffs: &[i64], t: &PuiseuxSeries) -> PuiseuxSeries {
    let mut acc = PuiseuxSeries::zero(t.m, i64::MAX / 4);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(t);
        if c != 0 {
            acc = acc.add(&PuiseuxSeries::monomial(
                t.m,
                0,
                NumberFieldElem::from_int(c),
                acc.trunc,
            ));
        }
    }
    acc
}

/// E4 = 1 + 240 sum sigma_3(n) q^n on the integer lattice.
fn e4_series(tail: i64) -> PuiseuxSeries {
    let mut terms = vec![(0i64, NumberFieldElem::one())];
    for n in 1..tail {
        let sigma3: i64 = (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum();
        terms.push((n, NumberFieldElem::from_int(240 * sigma3)));
    }
    PuiseuxSeries::from_terms(1, &terms, tail)
}

/// Classical j = E4^3 / Delta with Delta = eta(z)^24, leading term q^-1.
pub fn j_classical(tail: i64) -> Result<PuiseuxSeries> {
    let e4 = e4_series(tail);
    let delta = eta_power(1, 24, tail)?.rebase_exact(1)?;
    let j = e4.pow(3).div(&delta)?;
    debug_assert_eq!(j.leading().map(|(k, _)| k), Some(-1));
    Ok(j)
}

/// Solve j_model(t) = j for the Laurent series t = Q^-1 (1 + ...), by
/// Newton iteration with window doubling on
/// F(t) = j t^5 (1 + 11t - t^2) + C(t)^3.
///
/// `j5` is the classical j rebased to the Q-lattice (q = Q^5); `window` is
/// the requested number of valid coefficients from the leading index -1.
pub fn hauptmodul(j5: &PuiseuxSeries, window: i64) -> Result<PuiseuxSeries> {
    let quad = [1i64, 11, -1]; // 1 + 11t - t^2
    let f_and_fp = |t: &PuiseuxSeries| -> (PuiseuxSeries, PuiseuxSeries) {
        let c = eval_int_poly(&C4_NUM, t);
        let c2 = c.mul(&c);
        let t2 = t.mul(t);
        let t4 = t2.mul(&t2);
        let t5 = t4.mul(t);
        let f = j5.mul(&t5).mul(&eval_int_poly(&quad, t)).add(&c2.mul(&c));
        // F' = j (5t^4 + 66t^5 - 7t^6) + 3 C^2 C'
        let dquad = t4
            .scale(&rat_i64(5))
            .add(&t5.scale(&rat_i64(66)))
            .add(&t5.mul(t).scale(&rat_i64(-7)));
        let cp = eval_int_poly(&[12, 28, -36, 4], t);
        let fp = j5.mul(&dquad).add(&c2.mul(&cp).scale(&rat_i64(3)));
        (f, fp)
    };

    let mut t = PuiseuxSeries::monomial(5, -1, NumberFieldElem::one(), 0);
    let mut prec: i64 = 1; // valid coefficients from index -1
    while prec < window {
        prec = (prec * 2).min(window);
        let padded = t.clone().with_trunc(-1 + prec);
        let (f, fp) = f_and_fp(&padded);
        if f.is_zero() {
            t = padded;
            continue;
        }
        let step = f.div(&fp)?;
        t = padded.sub(&step).with_trunc(-1 + prec);
    }
    // certify: honest residual of the final iterate
    let (f, _) = f_and_fp(&t);
    let edge = f.trunc.min(-1 + window);
    if f.iter().any(|(k, _)| *k < edge) {
        return Err(Error::CalibrationFailed(format!(
            "hauptmodul residual nonzero at index {:?}",
            f.leading().map(|(k, _)| k)
        )));
    }
    Ok(t)
}

/// Exact kernel of the 3x4 system pinning the order-3 vanishing combination.
fn order3_combination(basis: &[PuiseuxSeries; 4]) -> Result<[Rat; 4]> {
    // rows: coefficients at Q^0, Q^1, Q^2
    let mut m = [[Rat::zero(); 4]; 3];
    for (ri, row) in m.iter_mut().enumerate() {
        for (ci, u) in basis.iter().enumerate() {
            let c = u.coeff(ri as i64)?;
            row[ci] = c
                .as_rational()
                .ok_or(Error::CalibrationFailed("basis not rational".into()))?
                .clone();
        }
    }
    // gaussian elimination; kernel must be 1-dimensional
    let mut rows: Vec<[Rat; 4]> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..4 {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].recip();
        for c in 0..4 {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..4 {
                    let t = &f * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rank != 3 {
        return Err(Error::CalibrationFailed(format!(
            "order-3 system has rank {}, expected 3",
            rank
        )));
    }
    let free = (0..4)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let mut x = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    x[free] = Rat::one();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = -rows[r][free].clone();
    }
    Ok(x)
}

/// Build E1, E2 with `q_window` valid Q-coefficients.
pub fn calibrate(q_window: i64) -> Result<Calibration> {
    // the Newton residual and the two multiplications below eat a few
    // indices off the window; overshoot and trim
    let w = q_window + 24;
    let jq = j_classical(w / 5 + 8)?;
    let j5 = jq.rebase(5);
    let t = hauptmodul(&j5, w)?;

    let basis_q = eisenstein::rational_basis(w)?;
    let basis: Vec<PuiseuxSeries> = basis_q
        .iter()
        .map(|u| u.with_exponent_denominator(5))
        .collect();
    let basis: [PuiseuxSeries; 4] = [
        basis[0].clone(),
        basis[1].clone(),
        basis[2].clone(),
        basis[3].clone(),
    ];
    let x = order3_combination(&basis)?;
    let mut f30 = PuiseuxSeries::zero(5, w);
    for (xi, u) in x.iter().zip(basis.iter()) {
        f30 = f30.add(&u.scale(xi));
    }
    let (lead, c) = f30
        .leading()
        .ok_or(Error::CalibrationFailed("f30 vanishes".into()))?;
    if lead != 3 {
        return Err(Error::CalibrationFailed(format!(
            "order-3 combination has leading index {}",
            lead
        )));
    }
    let c = c
        .as_rational()
        .ok_or(Error::CalibrationFailed("f30 not rational".into()))?
        .clone();
    let f30 = f30.scale(&c.recip());

    let e2 = f30.mul(&eval_int_poly(&CUSP_QUAD, &t));
    let e1 = t.mul(&e2);

    // normalization and integrality checks
    match e2.leading() {
        Some((1, c)) if *c == NumberFieldElem::one() => {}
        other => {
            return Err(Error::CalibrationFailed(format!(
                "E2 leading term {:?}",
                other.map(|(k, c)| (k, c.clone()))
            )))
        }
    }
    if e1.coeff(0)? != NumberFieldElem::one() {
        return Err(Error::CalibrationFailed("E1 constant term is not 1".into()));
    }
    for (series, name) in [(&e1, "E1"), (&e2, "E2")] {
        for (k, c) in series.iter() {
            let ok = c
                .as_rational()
                .map(|r| r.is_integer())
                .unwrap_or(false);
            if !ok {
                return Err(Error::CalibrationFailed(format!(
                    "{} coefficient at Q^{} is not a rational integer",
                    name, k
                )));
            }
        }
    }
    // guard: E1 must lie back in the Eisenstein space
    verify_span_membership(&e1, &basis)?;

    let q_window = q_window.min(e2.trunc).min(e1.trunc);
    Ok(Calibration {
        e1: e1.with_trunc(q_window),
        e2: e2.with_trunc(q_window),
        t: t.with_trunc(q_window - 2),
        q_window,
    })
}

fn verify_span_membership(series: &PuiseuxSeries, basis: &[PuiseuxSeries; 4]) -> Result<()> {
    // solve for coordinates from the first rows, then verify everywhere
    let rows: Vec<i64> = (0..12).collect();
    let mut aug: Vec<[Rat; 5]> = Vec::new();
    for &r in &rows {
        let mut row = [
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ];
        for (ci, u) in basis.iter().enumerate() {
            row[ci] = u
                .coeff(r)?
                .as_rational()
                .ok_or(Error::CalibrationFailed("basis not rational".into()))?
                .clone();
        }
        row[4] = series
            .coeff(r)?
            .as_rational()
            .ok_or(Error::CalibrationFailed("series not rational".into()))?
            .clone();
        aug.push(row);
    }
    // gaussian solve
    let mut rank = 0usize;
    let mut pivots = Vec::new();
    for col in 0..4 {
        let Some(pr) = (rank..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, pr);
        let inv = aug[rank][col].recip();
        for c in 0..5 {
            aug[rank][c] = &aug[rank][c] * &inv;
        }
        for r in 0..aug.len() {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..5 {
                    let t = &f * &aug[rank][c];
                    aug[r][c] = &aug[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut coords = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    for (r, &pc) in pivots.iter().enumerate() {
        coords[pc] = aug[r][4].clone();
    }
    // inconsistent rows?
    for r in rank..aug.len() {
        if !aug[r][4].is_zero() {
            return Err(Error::CalibrationFailed(
                "series does not lie in the Eisenstein space".into(),
            ));
        }
    }
    // full verification below the common window edge
    let mut recon = PuiseuxSeries::zero(series.m, i64::MAX / 4);
    for (c, u) in coords.iter().zip(basis.iter()) {
        recon = recon.add(&u.scale(c));
    }
    let diff = series.sub(&recon);
    if !diff.is_zero() {
        return Err(Error::CalibrationFailed(
            "series deviates from its Eisenstein reconstruction".into(),
        ));
    }
    Ok(())
}

/// j(q) - j_model(E1/E2) as a series; identically zero through the window on
/// a valid calibration.
pub fn j_oracle(e1: &PuiseuxSeries, e2: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let window = e1.trunc.min(e2.trunc);
    let jq = j_classical(window / 5 + 8)?;
    let j5 = jq.rebase(5);
    let t = e1.div(e2)?;
    let c = eval_int_poly(&C4_NUM, &t);
    let num = c.pow(3).scale(&rat_i64(-1));
    let t2 = t.mul(&t);
    let den = t2.mul(&t2).mul(&t).mul(&eval_int_poly(&[1, 11, -1], &t));
    j5.sub(&num.div(&den)?)
        .rebase_exact(j5.m)
        .map_err(Into::into)
}

/// The basis h_j = (E1^(4-j) E2^j)^(1/4), j = 1, 2, 3, on the w = q^(1/20)
/// lattice, truncated at `w_trunc`.
pub fn h_basis(calib: &Calibration, w_trunc: i64) -> Result<[PuiseuxSeries; 3]> {
    let e1 = calib.e1.rebase(20);
    let e2 = calib.e2.rebase(20);
    let mut out = Vec::new();
    for j in 1..=3u32 {
        let prod = e1.pow(4 - j).mul(&e2.pow(j));
        let h = prod.nth_root(4)?;
        if h.trunc < w_trunc {
            return Err(Error::InsufficientTruncation {
                need: w_trunc,
                have: h.trunc,
            });
        }
        out.push(h.with_trunc(w_trunc));
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// h2 = sqrt(E1 E2) directly on its own width-10 lattice.
pub fn h2_mu10(calib: &Calibration, w_trunc: i64) -> Result<PuiseuxSeries> {
    let prod = calib.e1.rebase(10).mul(&calib.e2.rebase(10));
    let h = prod.nth_root(2)?;
    if h.trunc < w_trunc {
        return Err(Error::InsufficientTruncation {
            need: w_trunc,
            have: h.trunc,
        });
    }
    Ok(h.with_trunc(w_trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn int_coeff(s: &PuiseuxSeries, k: i64) -> i64 {
        s.coeff(k)
            .unwrap()
            .as_rational()
            .unwrap()
            .to_integer()
            .to_i64()
            .unwrap()
    }

    #[test]
    fn j_leading_terms() {
        let j = j_classical(8).unwrap();
        assert_eq!(int_coeff(&j, -1), 1);
        assert_eq!(int_coeff(&j, 0), 744);
        assert_eq!(int_coeff(&j, 1), 196884);
        assert_eq!(int_coeff(&j, 2), 21493760);
    }

    #[test]
    fn hauptmodul_leading_terms() {
        let j5 = j_classical(16).unwrap().rebase(5);
        let t = hauptmodul(&j5, 40).unwrap();
        let want = [1i64, 5, 10, 5, -15, -24, 15, 70];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(int_coeff(&t, k as i64 - 1), *w, "index {}", k as i64 - 1);
        }
    }

    #[test]
    fn calibration_leading_coefficients() {
        let c = calibrate(40).unwrap();
        let e1_want = [1i64, -2, -6, 7, 26, -2, -69, -51];
        let e2_want = [0i64, 1, -7, 19, -23, 1, 47, -97];
        for k in 0..8i64 {
            assert_eq!(int_coeff(&c.e1, k), e1_want[k as usize], "E1 Q^{}", k);
            assert_eq!(int_coeff(&c.e2, k), e2_want[k as usize], "E2 Q^{}", k);
        }
    }

    #[test]
    fn oracle_vanishes_on_calibration() {
        let c = calibrate(60).unwrap();
        let resid = j_oracle(&c.e1, &c.e2).unwrap();
        // identically zero through q^10 (50 Q-indices) and beyond
        assert!(resid.trunc >= 51, "residual window {}", resid.trunc);
        assert!(resid.is_zero(), "residual {}", resid);
    }

    #[test]
    fn oracle_detects_perturbation() {
        let c = calibrate(40).unwrap();
        let bumped = c.e2.add(&PuiseuxSeries::monomial(
            5,
            2,
            NumberFieldElem::one(),
            c.e2.trunc,
        ));
        let resid = j_oracle(&c.e1, &bumped).unwrap();
        assert!(!resid.is_zero());
    }

    #[test]
    fn h_basis_structure() {
        let c = calibrate(48).unwrap();
        let h = h_basis(&c, 160).unwrap();
        for (j, hj) in h.iter().enumerate() {
            let j = j as i64 + 1;
            assert_eq!(hj.leading().unwrap().0, j, "h{} leading index", j);
            assert_eq!(*hj.leading().unwrap().1, NumberFieldElem::one());
            assert!(hj.support_in_class(j, 4), "h{} support", j);
            assert!(hj.is_two_integral_rational(), "h{} 2-integrality", j);
        }
        // frozen values: h1 at w^5 is -13/4, h2 at w^6 is -9/2, h3 at w^7 is -23/4
        assert_eq!(
            h[0].coeff(5).unwrap(),
            NumberFieldElem::from_rat(crate::numfield::rat(-13, 4))
        );
        assert_eq!(
            h[1].coeff(6).unwrap(),
            NumberFieldElem::from_rat(crate::numfield::rat(-9, 2))
        );
        assert_eq!(
            h[2].coeff(7).unwrap(),
            NumberFieldElem::from_rat(crate::numfield::rat(-23, 4))
        );
    }

    #[test]
    fn h_identities() {
        let c = calibrate(48).unwrap();
        let h = h_basis(&c, 150).unwrap();
        // h1 h3 = h2^2
        let diff = h[0].mul(&h[2]).sub(&h[1].mul(&h[1]));
        assert!(diff.is_zero(), "{}", diff);
        // (h1/h3)^2 = E1/E2
        let lhs = h[0].div(&h[2]).unwrap().pow(2);
        let rhs = c.e1.rebase(20).div(&c.e2.rebase(20)).unwrap();
        let diff = lhs.sub(&rhs);
        assert!(diff.is_zero(), "{}", diff);
    }

    #[test]
    fn h2_on_width_ten_matches() {
        let c = calibrate(40).unwrap();
        let h = h_basis(&c, 120).unwrap();
        let h2 = h2_mu10(&c, 60).unwrap();
        // indices double from mu = 10 to mu = 20
        for n in (1..40i64).step_by(2) {
            assert_eq!(h2.coeff(n).unwrap(), h[1].coeff(2 * n).unwrap());
        }
    }
}
