//! Elliptic surface models over the projective line and their Frobenius
//! trace machinery.
//!
//! Each surface is a strategy behind the [`SurfaceModel`] trait: it knows its
//! admissible primes and produces Weierstrass coefficients for the fiber at
//! any base point (including the infinity chart). Models register by name in
//! [`MODELS`] and are selected at runtime (`--model` on the CLI).
//!
//! The K3 family (`k3n2`, `k3n4`) has integral coefficients and is valid at
//! every odd prime; the short-Weierstrass family (`gamma15`, `en2`, `en4`)
//! carries denominators 48 and 864 and is kept for p >= 5 cross-checks.

mod classify;
mod models;
mod trace;

pub use classify::{classify_fiber, FiberData, FiberKind};
pub use models::{En2, En4, Gamma15, K3N2, K3N4};
pub use trace::{trace_frobenius, trace_table, TraceTable};

use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FieldElement};

/// A point of P^1 over the working field.
#[derive(Clone, Copy, Debug)]
pub enum BasePoint {
    Finite(FieldElement),
    Infinity,
}

/// One interchangeable surface: fiber coefficients plus admissibility.
pub trait SurfaceModel: Sync {
    /// Registry key, e.g. "k3n2".
    fn name(&self) -> &'static str;

    /// Half-degree d of the attached Frobenius characteristic polynomial
    /// (degree 2d); zero for the rational surface over the base curve.
    fn half_degree(&self) -> usize;

    fn admissible(&self, p: u64) -> Result<()>;

    /// Weierstrass coefficients [a1, a2, a3, a4, a6] of the fiber at `t`,
    /// with the infinity fiber given in its integral chart.
    fn fiber(&self, ctx: &FieldCtx, t: &BasePoint) -> [FieldElement; 5];
}

/// The strategy registry, in deterministic display order.
pub static MODELS: [&'static dyn SurfaceModel; 5] = [&K3N2, &K3N4, &Gamma15, &En2, &En4];

pub fn model_by_name(name: &str) -> Result<&'static dyn SurfaceModel> {
    MODELS
        .iter()
        .copied()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownModel(name.to_string()))
}

pub fn model_names() -> Vec<&'static str> {
    MODELS.iter().map(|m| m.name()).collect()
}
