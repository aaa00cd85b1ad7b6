//! Weight-3 Eisenstein series of level 5.
//!
//! The space is spanned by E3(1, chi), E3(chi, 1) and their conjugates,
//! where chi is either order-4 character mod 5. Expansions are the divisor
//! sums sum_{d|n} chi1(n/d) chi2(d) d^2 with the generalized-Bernoulli
//! constant term -B_{3,chi2}/6 when chi1 is trivial.

use crate::error::{Error, Result};
use crate::numfield::{rat, rat_i64, NumberFieldElem};
use crate::series::PuiseuxSeries;

/// Dirichlet characters available here: the trivial character mod 1 and the
/// two order-4 characters mod 5 (chi(2) = i and its conjugate).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Character {
    Trivial,
    Chi,
    ChiBar,
}

impl Character {
    pub fn modulus(&self) -> u64 {
        match self {
            Character::Trivial => 1,
            _ => 5,
        }
    }

    fn is_odd(&self) -> bool {
        !matches!(self, Character::Trivial)
    }

    pub fn value(&self, n: i64) -> NumberFieldElem {
        match self {
            Character::Trivial => NumberFieldElem::one(),
            Character::Chi | Character::ChiBar => {
                let i_pow = |k: u32| -> NumberFieldElem {
                    match k % 4 {
                        0 => NumberFieldElem::one(),
                        1 => NumberFieldElem::i(),
                        2 => NumberFieldElem::from_int(-1),
                        _ => -NumberFieldElem::i(),
                    }
                };
                // chi(2) = i; 2 generates (Z/5)*: 2^0=1, 2^1=2, 2^2=4, 2^3=3
                let log = match n.rem_euclid(5) {
                    1 => 0u32,
                    2 => 1,
                    4 => 2,
                    3 => 3,
                    _ => return NumberFieldElem::zero(),
                };
                let v = i_pow(log);
                if matches!(self, Character::ChiBar) {
                    v.galois_conjugate(3).unwrap()
                } else {
                    v
                }
            }
        }
    }
}

/// B_{3, chi} = L^2 sum_{a=1..L} chi(a) B_3(a/L) for modulus L = 5.
pub fn generalized_bernoulli_3(chi: Character) -> NumberFieldElem {
    let l = chi.modulus() as i64;
    let mut acc = NumberFieldElem::zero();
    for a in 1..=l {
        // B_3(x) = x^3 - 3/2 x^2 + 1/2 x
        let x = rat(a, l);
        let b3 = &x * &x * &x - rat(3, 2) * &x * &x + rat(1, 2) * &x;
        acc = acc + chi.value(a).scale(&b3);
    }
    acc.scale(&rat_i64(l * l))
}

/// Weight-3 Eisenstein q-expansion at infinity for the pair (chi1, chi2)
/// with (chi1 chi2)(-1) = -1; constant term is zero when chi1 is nontrivial.
pub fn eisenstein_e3(chi1: Character, chi2: Character, tail: i64) -> Result<PuiseuxSeries> {
    if chi1.is_odd() == chi2.is_odd() {
        return Err(Error::ParityViolation);
    }
    let mut terms: Vec<(i64, NumberFieldElem)> = Vec::new();
    if matches!(chi1, Character::Trivial) {
        let c0 = generalized_bernoulli_3(chi2).scale(&rat(-1, 6));
        terms.push((0, c0));
    }
    for n in 1..tail {
        let mut acc = NumberFieldElem::zero();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let v = chi1.value(n / d) * chi2.value(d);
            if !v.is_zero() {
                acc = acc + v.scale(&rat_i64(d * d));
            }
        }
        terms.push((n, acc));
    }
    Ok(PuiseuxSeries::from_terms(1, &terms, tail))
}

/// Rational basis of the 4-dimensional weight-3 Eisenstein space:
/// u1 = G_a + G_c, u2 = i(G_a - G_c), u3 = G_b + G_d, u4 = i(G_b - G_d)
/// where G_a = E3(1, chi), G_b = E3(chi, 1) and c, d are their conjugates.
pub fn rational_basis(tail: i64) -> Result<[PuiseuxSeries; 4]> {
    let ga = eisenstein_e3(Character::Trivial, Character::Chi, tail)?;
    let gb = eisenstein_e3(Character::Chi, Character::Trivial, tail)?;
    let gc = eisenstein_e3(Character::Trivial, Character::ChiBar, tail)?;
    let gd = eisenstein_e3(Character::ChiBar, Character::Trivial, tail)?;
    let i = NumberFieldElem::i();
    let u1 = ga.add(&gc);
    let u2 = ga.sub(&gc).scale_nf(&i);
    let u3 = gb.add(&gd);
    let u4 = gb.sub(&gd).scale_nf(&i);
    for u in [&u1, &u2, &u3, &u4] {
        for (_, c) in u.iter() {
            debug_assert!(c.is_rational(), "rational basis must have rational expansions");
        }
    }
    Ok([u1, u2, u3, u4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_value() {
        // B_{3,chi} = (12 + 6i)/5 for chi(2) = i
        let b = generalized_bernoulli_3(Character::Chi);
        let want = NumberFieldElem::from_rat(rat(12, 5)) + NumberFieldElem::i().scale(&rat(6, 5));
        assert_eq!(b, want);
    }

    #[test]
    fn divisor_sum_coefficients() {
        let g = eisenstein_e3(Character::Trivial, Character::Chi, 8).unwrap();
        // n = 1: chi(1) 1^2 = 1
        assert_eq!(g.coeff(1).unwrap(), NumberFieldElem::one());
        // n = 2: chi(2) 4 + chi(1) = 1 + 4i
        let want = NumberFieldElem::one() + NumberFieldElem::i().scale(&rat_i64(4));
        assert_eq!(g.coeff(2).unwrap(), want);
        // constant term -B/6 = -(2+i)/5
        let c0 = NumberFieldElem::from_rat(rat(-2, 5)) + NumberFieldElem::i().scale(&rat(-1, 5));
        assert_eq!(g.coeff(0).unwrap(), c0);
    }

    #[test]
    fn nontrivial_chi1_kills_constant() {
        let g = eisenstein_e3(Character::Chi, Character::Trivial, 8).unwrap();
        assert!(g.coeff(0).unwrap().is_zero());
        // n = 2: chi(2) + chi(1) 4 = 4 + i
        let want = NumberFieldElem::from_int(4) + NumberFieldElem::i();
        assert_eq!(g.coeff(2).unwrap(), want);
    }

    #[test]
    fn parity_enforced() {
        assert!(matches!(
            eisenstein_e3(Character::Trivial, Character::Trivial, 5),
            Err(Error::ParityViolation)
        ));
        assert!(matches!(
            eisenstein_e3(Character::Chi, Character::ChiBar, 5),
            Err(Error::ParityViolation)
        ));
    }

    #[test]
    fn basis_is_rational() {
        let us = rational_basis(12).unwrap();
        for u in &us {
            for (_, c) in u.iter() {
                assert!(c.is_rational());
            }
        }
    }
}
