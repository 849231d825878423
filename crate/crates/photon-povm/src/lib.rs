//! Single-photon observables as POVMs.
//!
//! The physical single-photon Hilbert space is the space of transverse
//! momentum-space wavefunctions with measure d³p/|p|. Observables are
//! built by projecting spin-1 PVMs from the extended space down to the
//! physical one, which turns position and spin into genuinely unsharp
//! (POVM) observables while momentum and helicity stay sharp.
//!
//! The crate has two independent computational routes:
//!
//! * [`closedform`] — the analytic results for Gaussian states with
//!   definite polarization or definite spin, everything expressed through
//!   Dawson's function via the u-functions of [`specfun`];
//! * [`quadrature`] + [`povm`] — direct numerical evaluation of the same
//!   probabilities and moments from the defining integrals.
//!
//! The [`verify`] module runs the acceptance suite that cross-checks the
//! two routes and the structural identities; the CLI exposes it as
//! `photon-povm verify`.
//!
//! Conventions: ħ = 1, momenta in units of p₀ (oriented along +z),
//! positions in units of ħ/p₀, uncertainty products in units of ħ.

pub mod closedform;
pub mod extremize;
pub mod geometry;
pub mod linalg;
pub mod povm;
pub mod quadrature;
pub mod specfun;
pub mod states;
pub mod verify;

pub use linalg::{CMat2, CMat3, CVec2, CVec3, Vec3, C64};
pub use specfun::{dawson, u_functions, UFunctions, WidthParam};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The frame reference vector is (numerically) parallel to p.
    #[error("degenerate frame: |m x p| <= {tol:e} * |p|")]
    DegenerateFrame { tol: f64 },
    #[error("zero momentum vector")]
    ZeroMomentum,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    /// The spin state has (numerically) no transverse component.
    #[error("vanishing projection on the physical space: K^2 = {k_sq:e} <= {eps:e}")]
    VanishingProjection { k_sq: f64, eps: f64 },
    /// Two quadrature refinement levels disagree beyond the requested tolerance.
    #[error("quadrature tolerance not met: value {value:e}, refined {refined:e}, rel diff {rel_diff:e} > {tol:e}")]
    ToleranceNotMet {
        value: f64,
        refined: f64,
        rel_diff: f64,
        tol: f64,
    },
    /// Asymptotic series evaluated outside its validity window.
    #[error("asymptotic regime mismatch: a = {a:e} outside {regime} window")]
    RegimeMismatch { a: f64, regime: &'static str },
    /// Position moments need an analytic amplitude gradient, which this
    /// state (built from a generic closure) does not carry.
    #[error("state carries no analytic gradient; position moments unavailable")]
    GradientUnavailable,
}

pub type Result<T> = std::result::Result<T, Error>;
