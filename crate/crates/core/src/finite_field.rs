//! Arithmetic in F_p and F_{p^r}, r <= 6, on a fixed polynomial basis.
//!
//! The inner loop of point counting is dominated by quadratic-character
//! evaluations, so fields of at most 2^20 elements carry a precomputed
//! square table indexed by the base-p digit encoding of an element; larger
//! fields fall back to exponentiation by (q-1)/2.
//!
//! Element values are plain coefficient arrays; all operations live on the
//! immutable [`FieldCtx`], which is safe to share across worker threads.

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 6;
const CHAR_TABLE_LIMIT: u64 = 1 << 20;

/// An element of F_{p^r}: coefficients of the polynomial basis, little
/// endian, reduced into [0, p); entries at positions >= r are zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct FieldElement {
    pub c: [u64; MAX_DEGREE],
}

/// Field context: prime, extension degree, modulus and derived tables.
pub struct FieldCtx {
    p: u64,
    r: usize,
    q: u64,
    /// Monic modulus of degree r, low-to-high, length r+1. Unused when r = 1.
    modulus: [u64; MAX_DEGREE + 1],
    /// red_rows[k] = x^{r+k} mod modulus, for k = 0..r-1.
    red_rows: [[u64; MAX_DEGREE]; MAX_DEGREE - 1],
    char_table: Option<Vec<i8>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Build F_{p^r} with the deterministic modulus: the first monic irreducible
/// of degree r in base-p digit order of the coefficient vector (constant
/// digit least significant).
pub fn make_field(p: u64, r: usize) -> Result<FieldCtx> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r < 1 || r > MAX_DEGREE {
        return Err(Error::BadExtensionDegree(r));
    }
    if p >= CHAR_TABLE_LIMIT {
        return Err(Error::FieldTooLarge { p, r });
    }
    let q = (0..r).try_fold(1u64, |acc, _| acc.checked_mul(p)).filter(|&q| q < (1 << 62));
    let q = match q {
        Some(q) => q,
        None => return Err(Error::FieldTooLarge { p, r }),
    };

    let mut modulus = [0u64; MAX_DEGREE + 1];
    modulus[r] = 1;
    if r > 1 {
        let mut found = false;
        for v in 0..q {
            let mut coeffs = [0u64; MAX_DEGREE + 1];
            let mut vv = v;
            for c in coeffs.iter_mut().take(r) {
                *c = vv % p;
                vv /= p;
            }
            coeffs[r] = 1;
            if poly_is_irreducible(&coeffs[..=r], p) {
                modulus = coeffs;
                found = true;
                break;
            }
        }
        debug_assert!(found, "monic irreducible of degree {} exists", r);
    }

    // reduction rows: x^{r+k} mod modulus
    let mut red_rows = [[0u64; MAX_DEGREE]; MAX_DEGREE - 1];
    if r > 1 {
        let mut row = [0u64; MAX_DEGREE];
        for j in 0..r {
            row[j] = (p - modulus[j] % p) % p; // x^r = -(m_0 + ... )
        }
        red_rows[0] = row;
        for k in 1..r - 1 {
            let prev = red_rows[k - 1];
            let mut next = [0u64; MAX_DEGREE];
            let top = prev[r - 1];
            for j in (1..r).rev() {
                next[j] = prev[j - 1];
            }
            next[0] = 0;
            if top != 0 {
                for j in 0..r {
                    next[j] = (next[j] + top * red_rows[0][j]) % p;
                }
            }
            red_rows[k] = next;
        }
    }

    let mut ctx = FieldCtx {
        p,
        r,
        q,
        modulus,
        red_rows,
        char_table: None,
    };
    if q <= CHAR_TABLE_LIMIT {
        let mut table = vec![-1i8; q as usize];
        table[0] = 0;
        for idx in 0..q {
            let e = ctx.element_from_index(idx);
            let s = ctx.mul(&e, &e);
            table[ctx.index(&s) as usize] = 1;
        }
        ctx.char_table = Some(table);
    }
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus_coeff(&self, i: usize) -> u64 {
        self.modulus[i]
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut e = FieldElement::default();
        e.c[0] = n % self.p;
        e
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let m = n.rem_euclid(self.p as i64) as u64;
        self.from_u64(m)
    }

    pub fn index(&self, x: &FieldElement) -> u64 {
        let mut v = 0u64;
        for i in (0..self.r).rev() {
            v = v * self.p + x.c[i];
        }
        v
    }

    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let mut e = FieldElement::default();
        for i in 0..self.r {
            e.c[i] = idx % self.p;
            idx /= self.p;
        }
        e
    }

    pub fn coeff_vec(&self, x: &FieldElement) -> Vec<u64> {
        x.c[..self.r].to_vec()
    }

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        x.c.iter().all(|&v| v == 0)
    }

    pub fn is_minus_one(&self, x: &FieldElement) -> bool {
        *x == self.from_u64(self.p - 1)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = FieldElement::default();
        for i in 0..self.r {
            let s = a.c[i] + b.c[i];
            out.c[i] = if s >= self.p { s - self.p } else { s };
        }
        out
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = FieldElement::default();
        for i in 0..self.r {
            out.c[i] = (a.c[i] + self.p - b.c[i]) % self.p;
        }
        out
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.r == 1 {
            let mut out = FieldElement::default();
            out.c[0] = a.c[0] * b.c[0] % self.p;
            return out;
        }
        let mut acc = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..self.r {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..self.r {
                acc[i + j] += a.c[i] * b.c[j];
            }
        }
        for k in (self.r..2 * self.r - 1).rev() {
            let c = acc[k] % self.p;
            acc[k] = 0;
            if c != 0 {
                let row = &self.red_rows[k - self.r];
                for j in 0..self.r {
                    acc[k - self.r + j] += c * row[j];
                }
            }
        }
        let mut out = FieldElement::default();
        for i in 0..self.r {
            out.c[i] = acc[i] % self.p;
        }
        out
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// 0 on zero, +1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, x: &FieldElement) -> i8 {
        if let Some(table) = &self.char_table {
            return table[self.index(x) as usize];
        }
        if self.is_zero(x) {
            return 0;
        }
        let y = self.pow(x, (self.q - 1) / 2);
        if y == self.one() {
            1
        } else {
            debug_assert!(self.is_minus_one(&y));
            -1
        }
    }

    /// Least d with x^{p^d} = x; divides r.
    pub fn element_degree(&self, x: &FieldElement) -> usize {
        let mut y = *x;
        for d in 1..=self.r {
            y = self.frobenius(&y);
            if y == *x && self.r % d == 0 {
                return d;
            }
        }
        self.r
    }

    /// True when x is the canonical representative (smallest index) of its
    /// Frobenius orbit and the orbit has size exactly d = degree of x.
    pub fn is_orbit_representative(&self, x: &FieldElement, d: usize) -> bool {
        let idx = self.index(x);
        let mut y = *x;
        for step in 1..=d {
            y = self.frobenius(&y);
            if step < d {
                if y == *x {
                    return false; // degree smaller than d
                }
                if self.index(&y) < idx {
                    return false;
                }
            }
        }
        y == *x
    }

    /// Horner evaluation of a polynomial with field coefficients (low first).
    pub fn eval_poly(&self, coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, c);
        }
        acc
    }
}

// --- standalone polynomial arithmetic over F_p for the modulus search ---

fn polymod_u64(p: u64, a: &mut Vec<u64>, m: &[u64]) {
    // m monic
    while a.len() >= m.len() {
        let c = *a.last().unwrap() % p;
        if c != 0 {
            let off = a.len() - m.len();
            for (j, &mj) in m.iter().enumerate().take(m.len() - 1) {
                let t = (c * (p - mj % p)) % p;
                a[off + j] = (a[off + j] + t) % p;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

fn polymul_u64(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    polymod_u64(p, &mut out, m);
    out
}

/// x^(p^d) mod m via square-and-multiply with a u128 exponent.
fn poly_xq_pow(p: u64, d: u32, m: &[u64]) -> Vec<u64> {
    let mut e: u128 = 1;
    for _ in 0..d {
        e *= p as u128;
    }
    let mut acc = vec![1u64];
    let mut base = vec![0u64, 1];
    polymod_u64(p, &mut base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = polymul_u64(p, &acc, &base, m);
        }
        base = polymul_u64(p, &base, &base, m);
        e >>= 1;
    }
    acc
}

fn polygcd_u64(p: u64, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut a, mut b) = (a, b);
    normalize(&mut a);
    normalize(&mut b);
    while !b.is_empty() {
        let lead_inv = mod_inv(p, *b.last().unwrap());
        let bb: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        polymod_u64(p, &mut a, &bb);
        normalize(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn normalize(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mod_inv(p: u64, a: u64) -> u64 {
    // p prime, a nonzero mod p
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn poly_is_irreducible(m: &[u64], p: u64) -> bool {
    let r = m.len() - 1;
    // x^(p^r) = x mod m
    let xr = poly_xq_pow(p, r as u32, m);
    let mut xr_minus_x = xr.clone();
    if xr_minus_x.len() < 2 {
        xr_minus_x.resize(2, 0);
    }
    xr_minus_x[1] = (xr_minus_x[1] + p - 1) % p;
    normalize(&mut xr_minus_x);
    if !xr_minus_x.is_empty() {
        return false;
    }
    // gcd(x^(p^(r/l)) - x, m) = 1 for prime l | r
    let mut primes = vec![];
    let mut rr = r;
    let mut f = 2;
    while f * f <= rr {
        if rr % f == 0 {
            primes.push(f);
            while rr % f == 0 {
                rr /= f;
            }
        }
        f += 1;
    }
    if rr > 1 {
        primes.push(rr);
    }
    for l in primes {
        let mut xd = poly_xq_pow(p, (r / l) as u32, m);
        if xd.len() < 2 {
            xd.resize(2, 0);
        }
        xd[1] = (xd[1] + p - 1) % p;
        normalize(&mut xd);
        let g = polygcd_u64(p, m.to_vec(), xd);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
