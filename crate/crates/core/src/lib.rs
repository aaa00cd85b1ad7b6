//! Exact-arithmetic toolkit for weight-3 noncongruence cusp forms attached to
//! elliptic surfaces over the line: finite-field point counting, Frobenius
//! characteristic polynomials, eta-quotient and Eisenstein q-expansions, and
//! p-adic verification of three-term Atkin–Swinnerton-Dyer congruences.
//!
//! Module map:
//! - [`numfield`] — the degree-4 cyclotomic field Q(w8), w8^4 = -1
//! - [`padic`] — unramified p-adic rings mod p^K with Hensel-lifted roots of x^4+1
//! - [`finite_field`] — F_{p^r} arithmetic, quadratic characters, Frobenius orbits
//! - [`surface`] — the elliptic surface models, fiber classification, Lefschetz traces
//! - [`charpoly`] — Newton identities, functional equation, W- split, Weil checks
//! - [`series`] — exact truncated Puiseux series over Q(w8)
//! - [`forms`] — eta quotients, Eisenstein series, hauptmodul calibration, h-basis
//! - [`asd`] — three-term congruence plans, p-adic checking, cross-verification

pub mod asd;
pub mod charpoly;
pub mod error;
pub mod finite_field;
pub mod forms;
pub mod numfield;
pub mod padic;
pub mod series;
pub mod surface;

pub use error::{Error, Result};
