//! Effect operators, the PVM→POVM projection, joint probability
//! distributions and the numerical moment path.
//!
//! Kernels act pointwise on the reduced spin-basis amplitude u(p); the
//! projection F(p) = Π(p) E(p) Π(p) implements the restriction of an
//! extended-space PVM to the physical space. Momentum and helicity effects
//! leave the transverse subspace invariant and stay projective; spin and
//! position effects do not, and their idempotence defect is measurable.

use crate::geometry::{conjugated_projector, helicity_matrix, sn_eigenbasis};
use crate::linalg::{CMat3, CVec3, Vec3, C64, I};
use crate::quadrature::{integrate, integrate_checked, QuadratureSpec};
use crate::states::PhotonState;
use crate::{Error, Result};
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

/// The single place where the spin label convention m_s = 2 - s lives:
/// 0-based component index of the spin-basis amplitude for a given m_s.
pub fn spin_component_index(m_s: i32) -> usize {
    assert!((-1..=1).contains(&m_s), "m_s must be one of -1, 0, +1");
    (1 - m_s) as usize
}

/// Measurable momentum region: a predicate over p. Probabilities over
/// proper subregions are node-limited (the indicator boundary is not
/// resolved spectrally), so their convergence check runs at a documented
/// looser tolerance; see [`REGION_TOL`].
#[derive(Clone)]
pub struct MomentumRegion {
    pred: Arc<dyn Fn(Vec3) -> bool + Send + Sync>,
    pub description: String,
    is_all: bool,
}

/// Convergence-check floor for masked-region probabilities.
pub const REGION_TOL: f64 = 5e-3;

impl MomentumRegion {
    pub fn contains(&self, p: Vec3) -> bool {
        (self.pred)(p)
    }

    pub fn is_all(&self) -> bool {
        self.is_all
    }

    pub fn all() -> Self {
        MomentumRegion {
            pred: Arc::new(|_| true),
            description: "R^3".into(),
            is_all: true,
        }
    }

    /// Half-space n·p >= c.
    pub fn half_space(n: Vec3, c: f64) -> Self {
        MomentumRegion {
            pred: Arc::new(move |p| n.dot(p) >= c),
            description: format!("half-space n·p >= {c}"),
            is_all: false,
        }
    }

    pub fn ball(center: Vec3, radius: f64) -> Self {
        MomentumRegion {
            pred: Arc::new(move |p| (p - center).norm() <= radius),
            description: format!("ball r <= {radius}"),
            is_all: false,
        }
    }

    pub fn intersect(self, other: MomentumRegion) -> Self {
        let a = self.pred.clone();
        let b = other.pred.clone();
        MomentumRegion {
            pred: Arc::new(move |p| a(p) && b(p)),
            description: format!("({}) and ({})", self.description, other.description),
            is_all: self.is_all && other.is_all,
        }
    }

    pub fn union(self, other: MomentumRegion) -> Self {
        let a = self.pred.clone();
        let b = other.pred.clone();
        MomentumRegion {
            pred: Arc::new(move |p| a(p) || b(p)),
            description: format!("({}) or ({})", self.description, other.description),
            is_all: self.is_all || other.is_all,
        }
    }

    pub fn complement(self) -> Self {
        let a = self.pred.clone();
        MomentumRegion {
            pred: Arc::new(move |p| !a(p)),
            description: format!("not ({})", self.description),
            is_all: false,
        }
    }

    /// Tolerance actually used for probabilities over this region.
    fn effective_spec(&self, spec: &QuadratureSpec) -> QuadratureSpec {
        if self.is_all {
            *spec
        } else {
            QuadratureSpec {
                target_rel_tol: spec.target_rel_tol.max(REGION_TOL),
                ..*spec
            }
        }
    }
}

/// Momentum-pointwise positive matrix kernel representing one effect.
#[derive(Clone)]
pub struct EffectKernel {
    matrix_at: Arc<dyn Fn(Vec3) -> CMat3 + Send + Sync>,
    pub description: String,
}

impl EffectKernel {
    pub fn new<F>(description: impl Into<String>, f: F) -> Self
    where
        F: Fn(Vec3) -> CMat3 + Send + Sync + 'static,
    {
        EffectKernel {
            matrix_at: Arc::new(f),
            description: description.into(),
        }
    }

    pub fn matrix_at(&self, p: Vec3) -> CMat3 {
        (self.matrix_at)(p)
    }

    /// Identity kernel (the trivial effect).
    pub fn identity() -> Self {
        EffectKernel::new("identity", |_| CMat3::identity())
    }

    /// Momentum indicator 1_M(p)·1.
    pub fn momentum_indicator(region: MomentumRegion) -> Self {
        let desc = format!("momentum indicator on {}", region.description);
        EffectKernel::new(desc, move |p| {
            if region.contains(p) {
                CMat3::identity()
            } else {
                CMat3::ZERO
            }
        })
    }

    /// Extended-space S_z eigenprojector |e_s><e_s| for the given m_s.
    pub fn sz_projector(m_s: i32) -> Self {
        let idx = spin_component_index(m_s);
        EffectKernel::new(format!("Sz projector m_s={m_s}"), move |_| {
            let mut m = CMat3::ZERO;
            m.0[idx][idx] = 1.0.into();
            m
        })
    }

    /// Extended-space S·n eigenprojector for the given m_s.
    pub fn sn_projector(n: Vec3, m_s: i32) -> Self {
        let basis = sn_eigenbasis(n);
        let phi = basis
            .iter()
            .find(|(ms, _)| *ms == m_s)
            .map(|(_, v)| *v)
            .expect("m_s in {-1,0,1}");
        EffectKernel::new(format!("S·n projector m_s={m_s}"), move |_| {
            CMat3::outer(phi, phi)
        })
    }

    /// Helicity eigenprojector (ε² ± ε)/2 for eigenvalue ±1.
    pub fn helicity_projector(eps: i32) -> Self {
        assert!(eps == 1 || eps == -1);
        EffectKernel::new(format!("helicity projector eps={eps}"), move |p| {
            match helicity_matrix(p) {
                Ok(h) => {
                    let h2 = h * h;
                    if eps > 0 {
                        (h2 + h).scale_re(0.5)
                    } else {
                        (h2 - h).scale_re(0.5)
                    }
                }
                Err(_) => CMat3::ZERO,
            }
        })
    }
}

/// PVM→POVM projection: F(p) = Π(p) E(p) Π(p).
pub fn project_effect(e: &EffectKernel) -> EffectKernel {
    let inner = e.matrix_at.clone();
    EffectKernel::new(format!("projected({})", e.description), move |p| {
        match conjugated_projector(p) {
            Ok(proj) => proj * inner(p) * proj,
            Err(_) => CMat3::ZERO,
        }
    })
}

/// Spot-check that a kernel is positive and bounded by the identity on a
/// deterministic sample of momenta and directions.
pub fn spot_check_effect(e: &EffectKernel, tol: f64) -> bool {
    let pts = [
        Vec3::new(0.1, 0.2, 0.9),
        Vec3::new(-0.7, 0.3, 1.2),
        Vec3::new(0.4, -1.0, 0.5),
        Vec3::new(1.3, 0.8, -0.2),
    ];
    let dirs = [
        CVec3::new(1.0.into(), 0.0.into(), 0.0.into()),
        CVec3::new(0.0.into(), 1.0.into(), 0.0.into()),
        CVec3::new(0.0.into(), 0.0.into(), 1.0.into()),
        CVec3::new(0.6.into(), C64::new(0.0, 0.8), 0.0.into()),
        CVec3::new(C64::new(0.0, 0.6), 0.48.into(), 0.64.into()),
    ];
    for p in pts {
        let m = e.matrix_at(p);
        if m.max_abs_diff(&m.adjoint()) > tol {
            return false;
        }
        for d in dirs {
            let q = m.quadratic_form(d).re;
            if !(-tol..=1.0 + tol).contains(&q) {
                return false;
            }
        }
    }
    true
}

/// Apply a pointwise effect to a state (value-only result; the output norm
/// equals the effect's expectation, not 1).
pub fn apply_effect(state: &PhotonState, f: &EffectKernel) -> PhotonState {
    let kernel = f.clone();
    let st = state.clone();
    PhotonState::from_parts(
        Arc::new(move |p: Vec3| kernel.matrix_at(p).mul_vec(st.u(p))),
        None,
        state.m,
        state.hint,
        state.norm_sq,
    )
}

/// ‖(F² - F)ψ‖ for a pointwise kernel, via the quadrature norm.
pub fn idempotence_defect(
    state: &PhotonState,
    f: &EffectKernel,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let v = integrate_checked(&state.hint, spec, 1.0, |p| {
        let m = f.matrix_at(p);
        let d = (m * m - m).mul_vec(state.u(p));
        C64::new(d.norm_sq(), 0.0)
    })?;
    Ok((v.re.max(0.0) / state.norm_sq).sqrt())
}

/// Joint probability p(p ∈ M, S_z = ħ m_s).
pub fn prob_momentum_spin(
    state: &PhotonState,
    region: &MomentumRegion,
    m_s: i32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let idx = spin_component_index(m_s);
    let eff = region.effective_spec(spec);
    let region = region.clone();
    let v = integrate_checked(&state.hint, &eff, 1.0, move |p| {
        if region.contains(p) {
            C64::new(state.u(p)[idx].norm_sqr(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })?;
    Ok(v.re / state.norm_sq)
}

/// p(S_n = ħ m_s) for the spin projection along an arbitrary unit axis.
pub fn prob_spin_n(
    state: &PhotonState,
    n: Vec3,
    m_s: i32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let basis = sn_eigenbasis(n);
    let phi = basis
        .iter()
        .find(|(ms, _)| *ms == m_s)
        .map(|(_, v)| *v)
        .expect("m_s in {-1,0,1}");
    let v = integrate_checked(&state.hint, spec, 1.0, move |p| {
        C64::new(phi.dot(state.u(p)).norm_sqr(), 0.0)
    })?;
    Ok(v.re / state.norm_sq)
}

/// Joint probability p(p ∈ M, ε = ±1) of momentum and helicity.
pub fn prob_helicity(
    state: &PhotonState,
    region: &MomentumRegion,
    eps: i32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    assert!(eps == 1 || eps == -1);
    let eff = region.effective_spec(spec);
    let region = region.clone();
    let sign = eps as f64;
    let v = integrate_checked(&state.hint, &eff, 1.0, move |p| {
        if !region.contains(p) {
            return C64::new(0.0, 0.0);
        }
        match state.frame_components(p) {
            Ok([u1, u2]) => {
                let amp = (u1 + I * sign * u2) * FRAC_1_SQRT_2;
                C64::new(amp.norm_sqr(), 0.0)
            }
            Err(_) => C64::new(0.0, 0.0),
        }
    })?;
    Ok(v.re / state.norm_sq)
}

/// Position–spin density |[ψ̃_V(x)]_s|² (units p₀³/ħ³).
pub fn position_spin_density(
    state: &PhotonState,
    x: Vec3,
    m_s: i32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let idx = spin_component_index(m_s);
    let w = crate::quadrature::position_wavefunction(state, x, spec)?;
    Ok(w[idx].norm_sqr() / state.norm_sq)
}

/// Per-axis first and second moments of momentum and position, with the
/// preparation uncertainty products (units of ħ).
#[derive(Debug, Clone, Copy)]
pub struct Moments {
    pub p_mean: [f64; 3],
    pub p_sq: [f64; 3],
    pub x_mean: [f64; 3],
    pub x_sq: [f64; 3],
    pub product: [f64; 3],
}

/// Moments via the analytic momentum-space integrands: momentum from
/// direct weights, position from the amplitude gradient,
/// <X_j> = Re i∫u†∂ⱼu and <X_j²> = ∫‖∂ⱼu‖² (the second derivative is
/// integrated by parts; only first frame derivatives enter).
pub fn moments_and_uncertainty(state: &PhotonState, spec: &QuadratureSpec) -> Result<Moments> {
    if !state.has_gradient() {
        return Err(Error::GradientUnavailable);
    }
    let norm = state.norm_sq;
    let mut out = Moments {
        p_mean: [0.0; 3],
        p_sq: [0.0; 3],
        x_mean: [0.0; 3],
        x_sq: [0.0; 3],
        product: [0.0; 3],
    };
    let p_scale = state.hint.p0 * (1.0 + state.hint.a.sqrt());
    for j in 0..3 {
        out.p_mean[j] = integrate_checked(&state.hint, spec, p_scale, |p| {
            C64::new(p.comp(j) * state.u(p).norm_sq(), 0.0)
        })?
        .re / norm;
        out.p_sq[j] = integrate_checked(&state.hint, spec, p_scale * p_scale, |p| {
            C64::new(p.comp(j) * p.comp(j) * state.u(p).norm_sq(), 0.0)
        })?
        .re / norm;
        out.x_sq[j] = integrate_checked(&state.hint, spec, 1.0, |p| {
            let g = state.grad_u(p).expect("gradient checked above");
            C64::new(g[j].norm_sq(), 0.0)
        })?
        .re / norm;
        let x_scale = out.x_sq[j].abs().sqrt().max(1e-6);
        out.x_mean[j] = (integrate_checked(&state.hint, spec, x_scale, |p| {
            let g = state.grad_u(p).expect("gradient checked above");
            I * state.u(p).dot(g[j])
        })?)
        .re / norm;
        let var_p = out.p_sq[j] - out.p_mean[j] * out.p_mean[j];
        let var_x = out.x_sq[j] - out.x_mean[j] * out.x_mean[j];
        out.product[j] = (var_p * var_x).max(0.0).sqrt();
    }
    Ok(out)
}

/// Unchecked single-level moment evaluation (used where the defining
/// integral is known not to converge, to report the flagged value).
pub fn moments_single_level(state: &PhotonState, spec: &QuadratureSpec) -> Result<Moments> {
    if !state.has_gradient() {
        return Err(Error::GradientUnavailable);
    }
    let norm = state.norm_sq;
    let mut out = Moments {
        p_mean: [0.0; 3],
        p_sq: [0.0; 3],
        x_mean: [0.0; 3],
        x_sq: [0.0; 3],
        product: [0.0; 3],
    };
    for j in 0..3 {
        out.p_mean[j] =
            integrate(&state.hint, spec, |p| C64::new(p.comp(j) * state.u(p).norm_sq(), 0.0)).re
                / norm;
        out.p_sq[j] = integrate(&state.hint, spec, |p| {
            C64::new(p.comp(j) * p.comp(j) * state.u(p).norm_sq(), 0.0)
        })
        .re / norm;
        out.x_mean[j] = integrate(&state.hint, spec, |p| {
            let g = state.grad_u(p).expect("gradient checked above");
            I * state.u(p).dot(g[j])
        })
        .re / norm;
        out.x_sq[j] = integrate(&state.hint, spec, |p| {
            let g = state.grad_u(p).expect("gradient checked above");
            C64::new(g[j].norm_sq(), 0.0)
        })
        .re / norm;
        let var_p = out.p_sq[j] - out.p_mean[j] * out.p_mean[j];
        let var_x = out.x_sq[j] - out.x_mean[j] * out.x_mean[j];
        out.product[j] = (var_p * var_x).max(0.0).sqrt();
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Position-region effects on a Cartesian momentum lattice
// ---------------------------------------------------------------------------

/// Idempotence defect ‖(F² - F)ψ‖ of the position-ball effect
/// F = Π E_B Π, where E_B restricts the configuration-space wavefunction to
/// the ball |x| ≤ R. E_B acts in momentum space as convolution with
/// k_B(q) = (2π)⁻³ ∫_B e^{-iq·x} d³x = (sin QR - QR cos QR)/(2π²Q³),
/// evaluated here on a Cartesian momentum lattice (midpoint rule; the
/// lattice spacing is spectrally adequate for the Gaussian envelope).
pub fn position_ball_idempotence_defect(
    state: &PhotonState,
    radius: f64,
    n_grid: usize,
    halfwidth: f64,
) -> f64 {
    let center = state.hint.axis.normalized() * state.hint.p0;
    let n = n_grid;
    let h = 2.0 * halfwidth / n as f64;
    let coord = |i: usize| -halfwidth + (i as f64 + 0.5) * h;

    // lattice points, amplitudes, and pointwise projectors
    let total = n * n * n;
    let mut pts = Vec::with_capacity(total);
    let mut amps = Vec::with_capacity(total);
    for ix in 0..n {
        for iy in 0..n {
            for iz in 0..n {
                let p = center + Vec3::new(coord(ix), coord(iy), coord(iz));
                pts.push(p);
                amps.push(state.u(p));
            }
        }
    }
    let projs: Vec<CMat3> = pts
        .iter()
        .map(|p| conjugated_projector(*p).unwrap_or(CMat3::ZERO))
        .collect();

    let w = h * h * h;
    let two_pi_sq = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    let kernel = move |q2: f64| -> f64 {
        let q = q2.sqrt();
        let qr = q * radius;
        if qr < 1e-4 {
            // (sin t - t cos t)/q³ = R³(1/3 - t²/30 + ...)
            radius * radius * radius * (1.0 / 3.0 - qr * qr / 30.0) / two_pi_sq
        } else {
            (qr.sin() - qr * qr.cos()) / (two_pi_sq * q * q * q)
        }
    };

    let convolve = |input: &[CVec3]| -> Vec<CVec3> {
        let mut out = vec![CVec3::ZERO; total];
        for i in 0..total {
            let mut acc = CVec3::ZERO;
            for jdx in 0..total {
                let k = kernel((pts[i] - pts[jdx]).norm_sq());
                if k != 0.0 {
                    acc = acc + input[jdx].scale((k * w).into());
                }
            }
            out[i] = acc;
        }
        out
    };

    let apply_f = |input: &[CVec3]| -> Vec<CVec3> {
        let pre: Vec<CVec3> = input
            .iter()
            .zip(&projs)
            .map(|(u, pr)| pr.mul_vec(*u))
            .collect();
        let mid = convolve(&pre);
        mid.iter()
            .zip(&projs)
            .map(|(u, pr)| pr.mul_vec(*u))
            .collect()
    };

    let f1 = apply_f(&amps);
    let f2 = apply_f(&f1);
    let mut defect_sq = 0.0;
    for i in 0..total {
        defect_sq += (f2[i] - f1[i]).norm_sq() * w;
    }
    (defect_sq / state.norm_sq).sqrt()
}

// Internal constructor access for apply_effect
impl PhotonState {
    pub(crate) fn from_parts(
        u: Arc<dyn Fn(Vec3) -> CVec3 + Send + Sync>,
        grad: Option<Arc<dyn Fn(Vec3) -> [CVec3; 3] + Send + Sync>>,
        m: Vec3,
        hint: crate::states::GridHint,
        norm_sq: f64,
    ) -> Self {
        PhotonState::assemble(u, grad, m, hint, norm_sq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::WidthParam;
    use crate::states::{
        gamma_circular, make_pol_state, project_spin_state, GaussianPolState, GaussianSpinState,
    };
    use crate::closedform;

    fn wp(a: f64) -> WidthParam {
        WidthParam::new(a).unwrap()
    }

    fn h_basis(j: usize) -> CVec3 {
        let mut v = CVec3::ZERO;
        v.0[j] = 1.0.into();
        v
    }

    #[test]
    fn completeness_over_spin_labels() {
        let spec = QuadratureSpec::default();
        let st = make_pol_state(&GaussianPolState::new(wp(0.3), gamma_circular(1)).unwrap())
            .unwrap();
        let total: f64 = [-1, 0, 1]
            .iter()
            .map(|&ms| prob_momentum_spin(&st, &MomentumRegion::all(), ms, &spec).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-8, "sum = {total}");
    }

    #[test]
    fn circular_pol_sz_matches_closed_form() {
        let spec = QuadratureSpec::default();
        for a in [0.35, 1.7] {
            let st =
                make_pol_state(&GaussianPolState::new(wp(a), gamma_circular(1)).unwrap()).unwrap();
            let cf = closedform::pol_sz_distribution(wp(a), gamma_circular(1)).unwrap();
            for (i, ms) in [1, 0, -1].into_iter().enumerate() {
                let q = prob_momentum_spin(&st, &MomentumRegion::all(), ms, &spec).unwrap();
                assert!(
                    (q - cf[i]).abs() < 1e-9,
                    "a={a} ms={ms}: quad {q} closed {}",
                    cf[i]
                );
            }
        }
    }

    #[test]
    fn spin_family_sz_matches_closed_form() {
        let spec = QuadratureSpec::default();
        for a in [0.1, 1.0, 10.0] {
            for j in 0..3 {
                let (st, _) =
                    project_spin_state(&GaussianSpinState::new(wp(a), h_basis(j)).unwrap())
                        .unwrap();
                let cf = closedform::spin_sz_distribution(wp(a), h_basis(j)).unwrap();
                for (i, ms) in [1, 0, -1].into_iter().enumerate() {
                    let q = prob_momentum_spin(&st, &MomentumRegion::all(), ms, &spec).unwrap();
                    assert!(
                        (q - cf[i]).abs() < 1e-8,
                        "a={a} h=e{j} ms={ms}: quad {q} closed {}",
                        cf[i]
                    );
                }
            }
        }
    }

    #[test]
    fn spin_n_reduces_to_sz_along_z() {
        let spec = QuadratureSpec::default();
        let (st, _) =
            project_spin_state(&GaussianSpinState::new(wp(0.8), h_basis(0)).unwrap()).unwrap();
        for ms in [-1, 0, 1] {
            let a = prob_spin_n(&st, Vec3::EZ, ms, &spec).unwrap();
            let b = prob_momentum_spin(&st, &MomentumRegion::all(), ms, &spec).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        // completeness along an arbitrary axis
        let n = Vec3::new(0.36, -0.48, 0.8);
        let total: f64 = [-1, 0, 1]
            .iter()
            .map(|&ms| prob_spin_n(&st, n, ms, &spec).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-8);
    }

    #[test]
    fn helicity_of_circular_states() {
        let spec = QuadratureSpec::default();
        // gamma- = (1,-i)/√2 has amplitude on e+, i.e. helicity +1
        let minus =
            make_pol_state(&GaussianPolState::new(wp(0.5), gamma_circular(-1)).unwrap()).unwrap();
        let p_plus = prob_helicity(&minus, &MomentumRegion::all(), 1, &spec).unwrap();
        assert!((p_plus - 1.0).abs() < 1e-10, "p(+1) = {p_plus}");
        let plus =
            make_pol_state(&GaussianPolState::new(wp(0.5), gamma_circular(1)).unwrap()).unwrap();
        let p_plus = prob_helicity(&plus, &MomentumRegion::all(), 1, &spec).unwrap();
        assert!(p_plus.abs() < 1e-10);
        // linear gamma: 1/2 each
        let lin = make_pol_state(
            &GaussianPolState::new(wp(0.5), [1.0.into(), 0.0.into()]).unwrap(),
        )
        .unwrap();
        for eps in [1, -1] {
            let p = prob_helicity(&lin, &MomentumRegion::all(), eps, &spec).unwrap();
            assert!((p - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn momentum_marginal_is_monotone_on_nested_regions() {
        let spec = QuadratureSpec::default();
        let st = make_pol_state(&GaussianPolState::new(wp(0.5), gamma_circular(1)).unwrap())
            .unwrap();
        let mut last = 0.0;
        for r in [0.5, 1.0, 2.0, 4.0] {
            let region = MomentumRegion::ball(Vec3::EZ, r);
            let p: f64 = [-1, 0, 1]
                .iter()
                .map(|&ms| prob_momentum_spin(&st, &region, ms, &spec).unwrap())
                .sum();
            // masked regions are node-limited (REGION_TOL accuracy)
            assert!(p >= last - 1e-3, "not monotone at r={r}");
            assert!((-1e-3..=1.0 + 1e-3).contains(&p));
            last = p;
        }
    }

    #[test]
    fn sharp_effects_are_idempotent_unsharp_are_not() {
        let spec = QuadratureSpec::default();
        let st = make_pol_state(&GaussianPolState::new(wp(1.0), gamma_circular(1)).unwrap())
            .unwrap();
        // momentum indicator: exactly idempotent pointwise
        let mom = project_effect(&EffectKernel::momentum_indicator(MomentumRegion::half_space(
            Vec3::EZ,
            0.9,
        )));
        let d = idempotence_defect(&st, &mom, &spec).unwrap();
        assert!(d < 1e-12, "momentum defect {d}");
        // helicity projector: sharp
        let hel = project_effect(&EffectKernel::helicity_projector(1));
        let d = idempotence_defect(&st, &hel, &spec).unwrap();
        assert!(d < 1e-12, "helicity defect {d}");
        // S_z projector: unsharp after projection
        let sz = project_effect(&EffectKernel::sz_projector(1));
        let d = idempotence_defect(&st, &sz, &spec).unwrap();
        assert!(d > 1e-3, "Sz defect {d}");
    }

    #[test]
    fn projected_identity_acts_as_identity() {
        let spec = QuadratureSpec::default();
        let st = make_pol_state(&GaussianPolState::new(wp(0.7), gamma_circular(-1)).unwrap())
            .unwrap();
        let f = project_effect(&EffectKernel::identity());
        let applied = apply_effect(&st, &f);
        let overlap = crate::quadrature::photon_inner_product(&st, &applied, &spec).unwrap();
        assert!((overlap.re - 1.0).abs() < 1e-9);
        assert!(spot_check_effect(&f, 1e-12));
    }

    #[test]
    fn spin_moments_match_closed_forms() {
        let spec = QuadratureSpec::default();
        for a in [0.35, 1.7] {
            for j in [0usize, 1] {
                let (st, _) =
                    project_spin_state(&GaussianSpinState::new(wp(a), h_basis(j)).unwrap())
                        .unwrap();
                let m = moments_and_uncertainty(&st, &spec).unwrap();
                let cf = closedform::spin_uncertainty(wp(a), h_basis(j)).unwrap();
                for ax in 0..3 {
                    assert!(
                        (m.p_mean[ax] - cf.p_mean[ax]).abs() < 1e-8,
                        "a={a} e{j} P{ax}"
                    );
                    assert!((m.p_sq[ax] - cf.p_sq[ax]).abs() < 1e-8);
                    assert!((m.x_sq[ax] - cf.x_sq[ax]).abs() < 1e-8 * cf.x_sq[ax].max(1.0));
                    assert!(m.x_mean[ax].abs() < 1e-9);
                    assert!((m.product[ax] - cf.product[ax]).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn pol_moments_small_a_match_closed_form() {
        // at a = 1e-4 the frame rays carry no weight and the quadrature
        // reproduces the closed forms
        let spec = QuadratureSpec::default();
        let st = make_pol_state(
            &GaussianPolState::new(wp(1e-4), [1.0.into(), 0.0.into()]).unwrap(),
        )
        .unwrap();
        let m = moments_and_uncertainty(&st, &spec).unwrap();
        let cf = closedform::pol_uncertainty(wp(1e-4));
        assert!((m.p_mean[2] - 1.0).abs() < 1e-10);
        assert!((m.product[2] - cf.z).abs() < 1e-6);
        assert!((m.product[0] - cf.x).abs() < 1e-6);
    }

    #[test]
    fn pol_z_moment_diverges_at_order_one_width() {
        // the defining integral for <Z²> of the polarization family is
        // log-divergent on the frame rays; the refinement check must flag it
        let spec = QuadratureSpec::default();
        let st = make_pol_state(&GaussianPolState::new(wp(1.0), gamma_circular(1)).unwrap())
            .unwrap();
        let r = moments_and_uncertainty(&st, &spec);
        assert!(
            matches!(r, Err(Error::ToleranceNotMet { .. })),
            "expected the divergence to be flagged, got {r:?}"
        );
    }

    #[test]
    fn position_ball_effect_is_unsharp() {
        let st = make_pol_state(&GaussianPolState::new(wp(1.0), gamma_circular(1)).unwrap())
            .unwrap();
        let d = position_ball_idempotence_defect(&st, 1.0, 16, 9.0);
        assert!(d > 1e-3, "ball defect {d}");
        // a ball holding nearly all the probability approaches the identity
        // (the radius must stay below pi/spacing to be representable on the
        // momentum lattice)
        let d_big = position_ball_idempotence_defect(&st, 2.5, 16, 9.0);
        assert!(d_big < d, "defect should shrink: {d_big} vs {d}");
    }
}
