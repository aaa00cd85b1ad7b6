//! Dedekind eta expansions: eta(mz)^e = q^(me/24) prod (1 - q^(mn))^e, and
//! the four weight-3 eta quotients whose coefficients drive the congruence
//! data, together with the weight-3 newform g2 = eta(4z)^6.

use crate::error::Result;
use crate::numfield::{rat_i64, NumberFieldElem};
use crate::series::PuiseuxSeries;

/// prod_{n >= 1} (1 - q^(mult*n)) with `tail` valid integer-q coefficients.
fn euler_product(mult: u32, tail: i64) -> PuiseuxSeries {
    let mut acc = PuiseuxSeries::one(1, tail);
    let mut n = mult as i64;
    while n < tail {
        let factor = PuiseuxSeries::from_terms(
            1,
            &[
                (0, NumberFieldElem::one()),
                (n, NumberFieldElem::from_int(-1)),
            ],
            tail,
        );
        acc = acc.mul(&factor);
        n += mult as i64;
    }
    acc
}

/// eta(mult*z)^exp as a series on the 1/24 lattice with `tail` valid
/// q-integer coefficients past the leading exponent mult*exp/24.
pub fn eta_power(mult: u32, exp: i32, tail: i64) -> Result<PuiseuxSeries> {
    let base = euler_product(mult, tail);
    let powed = if exp >= 0 {
        base.pow(exp as u32)
    } else {
        base.pow((-exp) as u32).inv()?
    };
    Ok(powed.rebase(24).shift(mult as i64 * exp as i64))
}

/// One of the four eta quotients f_1, f_3, f_5, f_7 = sum a_j(n) q^(n/8),
/// supported on n = j mod 8, with `tail` q-integer coefficients.
pub fn f_series(j: u8, tail: i64) -> Result<PuiseuxSeries> {
    let s = match j {
        1 => eta_power(2, 12, tail)?
            .div(&eta_power(1, 1, tail)?.mul(&eta_power(4, 5, tail)?))?,
        3 => eta_power(1, 5, tail)?.mul(&eta_power(4, 1, tail)?),
        5 => eta_power(2, 12, tail)?
            .div(&eta_power(1, 5, tail)?.mul(&eta_power(4, 1, tail)?))?,
        7 => eta_power(1, 1, tail)?.mul(&eta_power(4, 5, tail)?),
        _ => return Err(crate::error::Error::Config(format!("no eta quotient f_{}", j))),
    };
    let s = s.rebase_exact(8)?;
    debug_assert!(s.support_in_class(j as i64, 8));
    Ok(s)
}

/// f' = f1 + 4 f5 + 2 sqrt(-2) (f3 - 4 f7); coefficients in Z[sqrt(-2)],
/// leading coefficient 1 at q^(1/8).
pub fn fprime(tail: i64) -> Result<PuiseuxSeries> {
    let f1 = f_series(1, tail)?;
    let f3 = f_series(3, tail)?;
    let f5 = f_series(5, tail)?;
    let f7 = f_series(7, tail)?;
    let two_sqrt_m2 = NumberFieldElem::sqrt_m2().scale(&rat_i64(2));
    let odd_part = f3.sub(&f7.scale(&rat_i64(4))).scale_nf(&two_sqrt_m2);
    Ok(f1.add(&f5.scale(&rat_i64(4))).add(&odd_part))
}

/// g2 = eta(4z)^6 = q - 6q^5 + 9q^9 + 10q^13 - 30q^17 + ..., on the integer
/// lattice.
pub fn g2_series(tail: i64) -> Result<PuiseuxSeries> {
    eta_power(4, 6, tail)?.rebase_exact(1)
}

/// Coefficient a(n) of a width-mu series indexed by w = q^(1/mu).
pub fn coefficient(series: &PuiseuxSeries, n: i64) -> Result<NumberFieldElem> {
    series.coeff(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat_i64;

    fn rat_coeff(s: &PuiseuxSeries, n: i64) -> i64 {
        let c = s.coeff(n).unwrap();
        assert!(c.is_rational());
        let r = c.coords[0].clone();
        assert!(r.is_integer());
        use num_traits::ToPrimitive;
        r.to_integer().to_i64().unwrap()
    }

    #[test]
    fn g2_expansion() {
        let g = g2_series(20).unwrap();
        assert_eq!(rat_coeff(&g, 1), 1);
        assert_eq!(rat_coeff(&g, 5), -6);
        assert_eq!(rat_coeff(&g, 9), 9);
        assert_eq!(rat_coeff(&g, 13), 10);
        assert_eq!(rat_coeff(&g, 17), -30);
        assert_eq!(rat_coeff(&g, 2), 0);
        assert_eq!(rat_coeff(&g, 3), 0);
    }

    #[test]
    fn f3_leading_terms() {
        // eta(z)^5 eta(4z) = q^(3/8)(1 - 5q + 5q^2 + ...)
        let f3 = f_series(3, 12).unwrap();
        assert_eq!(rat_coeff(&f3, 3), 1);
        assert_eq!(rat_coeff(&f3, 11), -5);
        assert_eq!(rat_coeff(&f3, 19), 5);
    }

    #[test]
    fn f1_leading_terms() {
        // eta(2z)^12/(eta(z) eta(4z)^5) = q^(1/8)(1 + q - 10q^2 + ...)
        let f1 = f_series(1, 12).unwrap();
        assert_eq!(rat_coeff(&f1, 1), 1);
        assert_eq!(rat_coeff(&f1, 9), 1);
        assert_eq!(rat_coeff(&f1, 17), -10);
    }

    #[test]
    fn f5_f7_leading_terms() {
        let f5 = f_series(5, 12).unwrap();
        assert_eq!(rat_coeff(&f5, 5), 1);
        assert_eq!(rat_coeff(&f5, 13), 5);
        assert_eq!(rat_coeff(&f5, 21), 8);
        let f7 = f_series(7, 12).unwrap();
        assert_eq!(rat_coeff(&f7, 7), 1);
        assert_eq!(rat_coeff(&f7, 15), -1);
        assert_eq!(rat_coeff(&f7, 23), -1);
    }

    #[test]
    fn fprime_leading_coefficients() {
        let fp = fprime(8).unwrap();
        assert_eq!(fp.coeff(1).unwrap(), NumberFieldElem::one());
        assert_eq!(
            fp.coeff(3).unwrap(),
            NumberFieldElem::sqrt_m2().scale(&rat_i64(2))
        );
        assert_eq!(fp.coeff(5).unwrap(), NumberFieldElem::from_int(4));
    }

    #[test]
    fn eta_quotients_consistent_two_routes() {
        // each f_j recomputed from a multiplied-out product form must agree
        let tail = 10;
        let f1 = f_series(1, tail).unwrap();
        let f5 = f_series(5, tail).unwrap();
        // f1 * f5 = eta(2z)^24 / (eta(z)^6 eta(4z)^6)
        let lhs = f1.mul(&f5);
        let rhs = eta_power(2, 24, tail)
            .unwrap()
            .div(
                &eta_power(1, 6, tail)
                    .unwrap()
                    .mul(&eta_power(4, 6, tail).unwrap()),
            )
            .unwrap()
            .rebase_exact(8)
            .unwrap();
        let diff = lhs.sub(&rhs);
        assert!(diff.is_zero(), "{}", diff);
        // f3 * f7 = eta(z)^6 eta(4z)^6
        let f3 = f_series(3, tail).unwrap();
        let f7 = f_series(7, tail).unwrap();
        let lhs = f3.mul(&f7);
        let rhs = eta_power(1, 6, tail)
            .unwrap()
            .mul(&eta_power(4, 6, tail).unwrap())
            .rebase_exact(8)
            .unwrap();
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn supports_mod_eight() {
        for j in [1u8, 3, 5, 7] {
            let f = f_series(j, 10).unwrap();
            assert!(f.support_in_class(j as i64, 8));
        }
    }
}
