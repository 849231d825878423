//! Gaussian state families, generic momentum-space states, projection into
//! the physical space and the roto-translation action.
//!
//! A [`PhotonState`] stores the reduced amplitude u(p) (spin-basis
//! 3-vector divided by √|p|), so that every probability and moment becomes
//! a plain d³p integral of u-bilinears. The physical frame components are
//! ψ̃ⁱ_V(p) = √|p| ẽᵢ(p)·(V† u(p)).
//!
//! States are immutable closures over their parameters; integrals are done
//! on demand by the quadrature module, never on grids.

use crate::geometry::{
    conjugated_projector, intrinsic_frame, rotate_vec, rotation_matrix, spin_rotation,
    transpose_rotate_vec, v_matrix,
};
use crate::linalg::{CMat3, CVec2, CVec3, Vec3, C64};
use crate::specfun::{u_functions, WidthParam};
use crate::{Error, Result};
use std::sync::Arc;

/// K² threshold below which a spin preparation counts as unphysical.
pub const EPS_PROJ: f64 = 1e-12;

type AmpFn = dyn Fn(Vec3) -> CVec3 + Send + Sync;
type GradFn = dyn Fn(Vec3) -> [CVec3; 3] + Send + Sync;

/// Where the quadrature should concentrate nodes for this state.
#[derive(Debug, Clone, Copy)]
pub struct GridHint {
    /// Momentum scale (Gaussian center radius).
    pub p0: f64,
    /// Width parameter.
    pub a: f64,
    /// Direction of the Gaussian center.
    pub axis: Vec3,
}

/// Gaussian state with definite polarization (coefficients on the intrinsic
/// frame).
#[derive(Debug, Clone)]
pub struct GaussianPolState {
    pub a: WidthParam,
    pub p0: f64,
    pub x0: Vec3,
    pub gamma: CVec2,
    pub m: Vec3,
}

impl GaussianPolState {
    /// Defaults: p0 = 1, x0 = 0, m = x̂.
    pub fn new(a: WidthParam, gamma: CVec2) -> Result<Self> {
        let s = GaussianPolState {
            a,
            p0: 1.0,
            x0: Vec3::ZERO,
            gamma,
            m: Vec3::EX,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_x0(mut self, x0: Vec3) -> Self {
        self.x0 = x0;
        self
    }

    pub fn with_m(mut self, m: Vec3) -> Self {
        self.m = m.normalized();
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.gamma[0].norm_sqr() + self.gamma[1].norm_sqr();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParam(format!(
                "polarization coefficients not normalized: |gamma|^2 = {n}"
            )));
        }
        Ok(())
    }
}

/// Circular coefficient pairs γ± = (1, ±i)/√2.
pub fn gamma_circular(sign: i32) -> CVec2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        C64::new(s, 0.0),
        C64::new(0.0, if sign >= 0 { s } else { -s }),
    ]
}

/// Gaussian state with definite spin (coefficients h on the extended-space
/// spin basis).
#[derive(Debug, Clone)]
pub struct GaussianSpinState {
    pub a: WidthParam,
    pub p0: f64,
    pub h: CVec3,
    pub m: Vec3,
}

impl GaussianSpinState {
    pub fn new(a: WidthParam, h: CVec3) -> Result<Self> {
        let n = h.norm_sq();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParam(format!(
                "spin coefficients not normalized: |h|^2 = {n}"
            )));
        }
        Ok(GaussianSpinState {
            a,
            p0: 1.0,
            h,
            m: Vec3::EX,
        })
    }
}

/// Physical single-photon state, held as the reduced amplitude u(p).
#[derive(Clone)]
pub struct PhotonState {
    u: Arc<AmpFn>,
    grad: Option<Arc<GradFn>>,
    pub m: Vec3,
    pub hint: GridHint,
    pub norm_sq: f64,
}

impl PhotonState {
    /// Reduced spin-basis amplitude u(p) = ψ̃_V(p)/√|p|.
    pub fn u(&self, p: Vec3) -> CVec3 {
        (self.u)(p)
    }

    /// Analytic gradient ∂u/∂p_j, j = 0,1,2.
    pub fn grad_u(&self, p: Vec3) -> Result<[CVec3; 3]> {
        match &self.grad {
            Some(g) => Ok(g(p)),
            None => Err(Error::GradientUnavailable),
        }
    }

    pub fn has_gradient(&self) -> bool {
        self.grad.is_some()
    }

    /// Reduced frame components (ũ¹, ũ²) with ũⁱ = ẽᵢ·(V†u);
    /// the physical ψ̃ⁱ_V are √|p| ũⁱ.
    pub fn frame_components(&self, p: Vec3) -> Result<[C64; 2]> {
        let f = intrinsic_frame(p, self.m)?;
        let w = v_matrix().adjoint().mul_vec(self.u(p));
        Ok([
            CVec3::from_real(f.e1).dot_bilinear(w),
            CVec3::from_real(f.e2).dot_bilinear(w),
        ])
    }

    pub fn with_norm_sq(mut self, n: f64) -> Self {
        self.norm_sq = n;
        self
    }

    pub(crate) fn assemble(
        u: Arc<AmpFn>,
        grad: Option<Arc<GradFn>>,
        m: Vec3,
        hint: GridHint,
        norm_sq: f64,
    ) -> Self {
        PhotonState {
            u,
            grad,
            m,
            hint,
            norm_sq,
        }
    }
}

fn envelope(a: f64, p0: f64, center: Vec3) -> impl Fn(Vec3) -> f64 + Send + Sync + Copy {
    let norm = (4.0 * std::f64::consts::PI * a * p0 * p0).powf(0.75);
    move |p: Vec3| ((p - center).norm_sq() / (-8.0 * a * p0 * p0)).exp() / norm
}

/// Build the polarization-family state of the given parameters; unit norm
/// by construction.
pub fn make_pol_state(params: &GaussianPolState) -> Result<PhotonState> {
    params.validate()?;
    let a = params.a.get();
    let p0 = params.p0;
    let center = Vec3::EZ * p0;
    let env = envelope(a, p0, center);
    let m = params.m;
    let x0 = params.x0;
    let gamma = params.gamma;
    let v = v_matrix();

    let amp = move |p: Vec3| -> CVec3 {
        let f = match intrinsic_frame(p, m) {
            Ok(f) => f,
            Err(_) => return CVec3::ZERO, // measure-zero ray
        };
        let e_gamma = CVec3::from_real(f.e1).scale(gamma[0]) + CVec3::from_real(f.e2).scale(gamma[1]);
        let phase = C64::from_polar(1.0, -p.dot(x0));
        v.mul_vec(e_gamma).scale(phase * env(p))
    };

    let grad = move |p: Vec3| -> [CVec3; 3] {
        let (f, g) = match crate::geometry::frame_gradient(p, m) {
            Ok(r) => r,
            Err(_) => return [CVec3::ZERO; 3],
        };
        let e_gamma = CVec3::from_real(f.e1).scale(gamma[0]) + CVec3::from_real(f.e2).scale(gamma[1]);
        let phase = C64::from_polar(1.0, -p.dot(x0));
        let e = env(p);
        let mut out = [CVec3::ZERO; 3];
        for j in 0..3 {
            let dlog_env = -(p.comp(j) - center.comp(j)) / (4.0 * a * p0 * p0);
            let de_gamma = CVec3::from_real(g.de[0][j]).scale(gamma[0])
                + CVec3::from_real(g.de[1][j]).scale(gamma[1]);
            // d/dp_j [env e^{-ip·x0} e_gamma]
            let scalar = C64::new(dlog_env, -x0.comp(j));
            out[j] = v
                .mul_vec(e_gamma.scale(scalar) + de_gamma)
                .scale(phase * e);
        }
        out
    };

    Ok(PhotonState {
        u: Arc::new(amp),
        grad: Some(Arc::new(grad)),
        m,
        hint: GridHint {
            p0,
            a,
            axis: Vec3::EZ,
        },
        norm_sq: 1.0,
    })
}

/// Norm² of the projected spin state: K² = h†K(a)h with
/// K(a) = diag(1-2a u2, 4a u2, 1-2a u2).
pub fn projection_norm_sq(a: WidthParam, h: CVec3) -> f64 {
    let u = u_functions(a);
    let av = a.get();
    let k_perp = 1.0 - 2.0 * av * u.u2;
    let k_mid = 4.0 * av * u.u2;
    k_perp * (h[0].norm_sqr() + h[2].norm_sqr()) + k_mid * h[1].norm_sqr()
}

/// Project the extended-space spin state onto the physical space; returns
/// the normalized state and the normalization constant K.
pub fn project_spin_state(params: &GaussianSpinState) -> Result<(PhotonState, f64)> {
    project_spin_state_eps(params, EPS_PROJ)
}

pub fn project_spin_state_eps(
    params: &GaussianSpinState,
    eps_proj: f64,
) -> Result<(PhotonState, f64)> {
    let k_sq = projection_norm_sq(params.a, params.h);
    if k_sq <= eps_proj {
        return Err(Error::VanishingProjection {
            k_sq,
            eps: eps_proj,
        });
    }
    let k = k_sq.sqrt();
    let a = params.a.get();
    let p0 = params.p0;
    let center = Vec3::EZ * p0;
    let env = envelope(a, p0, center);
    let h = params.h;
    let v = v_matrix();

    let amp = move |p: Vec3| -> CVec3 {
        match conjugated_projector(p) {
            Ok(proj) => proj.mul_vec(h).scale((env(p) / k).into()),
            Err(_) => CVec3::ZERO,
        }
    };

    let grad = move |p: Vec3| -> [CVec3; 3] {
        let np = p.norm();
        if np == 0.0 {
            return [CVec3::ZERO; 3];
        }
        let phat = p * (1.0 / np);
        let q = v.mul_vec(CVec3::from_real(phat));
        let proj = CMat3::identity() - CMat3::outer(q, q);
        let e = env(p) / k;
        let ph = proj.mul_vec(h);
        let mut out = [CVec3::ZERO; 3];
        for j in 0..3 {
            let dlog_env = -(p.comp(j) - center.comp(j)) / (4.0 * a * p0 * p0);
            let dphat = (Vec3::basis(j) - phat * phat.comp(j)) * (1.0 / np);
            let dq = v.mul_vec(CVec3::from_real(dphat));
            // dΠ = -(dq q† + q dq†)
            let dproj_h = dq.scale(q.dot(h)) + q.scale(dq.dot(h));
            out[j] = (ph.scale(dlog_env.into()) - dproj_h).scale(e.into());
        }
        out
    };

    Ok((
        PhotonState {
            u: Arc::new(amp),
            grad: Some(Arc::new(grad)),
            m: params.m,
            hint: GridHint {
                p0,
                a,
                axis: Vec3::EZ,
            },
            norm_sq: 1.0,
        },
        k,
    ))
}

/// Extended-space state: spin-basis 3-vector amplitude f(p), measure d³p/|p|.
#[derive(Clone)]
pub struct ExtendedState {
    f: Arc<AmpFn>,
    pub hint: GridHint,
    pub norm_sq: f64,
}

impl ExtendedState {
    pub fn f(&self, p: Vec3) -> CVec3 {
        (self.f)(p)
    }
}

/// Embed a physical state into the extended space: f(p) = √|p| u(p); the
/// longitudinal component is zero and the norm is preserved.
pub fn embed_photon_state(state: &PhotonState) -> ExtendedState {
    let u = state.u.clone();
    ExtendedState {
        f: Arc::new(move |p: Vec3| u(p).scale(p.norm().sqrt().into())),
        hint: state.hint,
        norm_sq: state.norm_sq,
    }
}

/// Roto-translation (U f)(p) = e^{-i a·p} e^{-i φ n·S} f(R⁻¹ p) on the
/// extended space; n must be a unit vector.
pub fn apply_rototranslation(
    state: &ExtendedState,
    a_vec: Vec3,
    axis: Vec3,
    angle: f64,
) -> ExtendedState {
    let f = state.f.clone();
    let rot = rotation_matrix(axis, angle);
    let spin_rot = spin_rotation(axis, angle);
    let hint = GridHint {
        axis: rotate_vec(&rot, state.hint.axis),
        ..state.hint
    };
    ExtendedState {
        f: Arc::new(move |p: Vec3| {
            let pr = transpose_rotate_vec(&rot, p); // R⁻¹ p
            let phase = C64::from_polar(1.0, -a_vec.dot(p));
            spin_rot.mul_vec(f(pr)).scale(phase)
        }),
        hint,
        norm_sq: state.norm_sq,
    }
}

/// Project an extended state back to the physical space (value-only
/// amplitude: no analytic gradient, so position moments are unavailable).
/// The stored norm is inherited; callers renormalize via quadrature when
/// the input had a longitudinal component.
pub fn project_extended(state: &ExtendedState, m: Vec3) -> PhotonState {
    let f = state.f.clone();
    PhotonState {
        u: Arc::new(move |p: Vec3| {
            let np = p.norm();
            if np == 0.0 {
                return CVec3::ZERO;
            }
            match conjugated_projector(p) {
                Ok(proj) => proj.mul_vec(f(p)).scale((1.0 / np.sqrt()).into()),
                Err(_) => CVec3::ZERO,
            }
        }),
        grad: None,
        m,
        hint: state.hint,
        norm_sq: state.norm_sq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pol_state_rejects_unnormalized_gamma() {
        let a = WidthParam::new(0.5).unwrap();
        assert!(GaussianPolState::new(a, [c(1.0, 0.0), c(0.5, 0.0)]).is_err());
        assert!(GaussianPolState::new(a, gamma_circular(1)).is_ok());
    }

    #[test]
    fn spin_state_k_squared_closed_forms() {
        // K² = 1 - 2a u2 for h = e1, K² = 4a u2 for h = e2
        let a = WidthParam::new(0.7).unwrap();
        let u = u_functions(a);
        let h1 = CVec3::new(c(1., 0.), c(0., 0.), c(0., 0.));
        let h2 = CVec3::new(c(0., 0.), c(1., 0.), c(0., 0.));
        assert!((projection_norm_sq(a, h1) - (1.0 - 1.4 * u.u2)).abs() < 1e-14);
        assert!((projection_norm_sq(a, h2) - 2.8 * u.u2).abs() < 1e-14);
    }

    #[test]
    fn vanishing_projection_triggers() {
        // K² = 4a u2 ≈ 4a below the 1e-12 threshold
        let a = WidthParam::new(1e-13).unwrap();
        let h2 = CVec3::new(c(0., 0.), c(1., 0.), c(0., 0.));
        let s = GaussianSpinState::new(a, h2).unwrap();
        assert!(matches!(
            project_spin_state(&s),
            Err(Error::VanishingProjection { .. })
        ));
    }

    #[test]
    fn pol_amplitude_is_transverse() {
        let a = WidthParam::new(0.5).unwrap();
        let st = make_pol_state(&GaussianPolState::new(a, [c(0.6, 0.0), c(0.0, 0.8)]).unwrap())
            .unwrap();
        let v = v_matrix();
        for p in [Vec3::new(0.3, 0.1, 0.9), Vec3::new(-0.5, 0.7, 1.3)] {
            let u = st.u(p);
            // longitudinal component e3·(V†u) = 0
            let w = v.adjoint().mul_vec(u);
            let e3 = p.normalized();
            let lon = CVec3::from_real(e3).dot_bilinear(w);
            assert!(lon.norm() < 1e-15 * u.norm().max(1e-300));
            // Π u = u
            let proj = conjugated_projector(p).unwrap();
            assert!((proj.mul_vec(u) - u).norm() < 1e-15);
        }
    }

    #[test]
    fn pol_gradient_matches_finite_differences() {
        let a = WidthParam::new(0.4).unwrap();
        let params = GaussianPolState::new(a, gamma_circular(1))
            .unwrap()
            .with_x0(Vec3::new(0.2, -0.1, 0.4));
        let st = make_pol_state(&params).unwrap();
        let p = Vec3::new(0.25, -0.4, 1.1);
        let g = st.grad_u(p).unwrap();
        let h = 1e-6;
        for j in 0..3 {
            let dp = Vec3::basis(j) * h;
            let fd = (st.u(p + dp) - st.u(p - dp)).scale((0.5 / h).into());
            assert!((fd - g[j]).norm() < 1e-8, "axis {j}");
        }
    }

    #[test]
    fn spin_gradient_matches_finite_differences() {
        let a = WidthParam::new(0.9).unwrap();
        let h_vec = CVec3::new(c(0.5, 0.1), c(-0.3, 0.4), c(0.2, -0.665)).scale(
            (1.0 / CVec3::new(c(0.5, 0.1), c(-0.3, 0.4), c(0.2, -0.665)).norm()).into(),
        );
        let (st, _k) = project_spin_state(&GaussianSpinState::new(a, h_vec).unwrap()).unwrap();
        let p = Vec3::new(0.65, 0.3, 0.8);
        let g = st.grad_u(p).unwrap();
        let h = 1e-6;
        for j in 0..3 {
            let dp = Vec3::basis(j) * h;
            let fd = (st.u(p + dp) - st.u(p - dp)).scale((0.5 / h).into());
            assert!((fd - g[j]).norm() < 1e-8, "axis {j}: {}", (fd - g[j]).norm());
        }
    }

    #[test]
    fn embedding_round_trip() {
        let a = WidthParam::new(0.5).unwrap();
        let st =
            make_pol_state(&GaussianPolState::new(a, [c(1.0, 0.0), c(0.0, 0.0)]).unwrap()).unwrap();
        let ext = embed_photon_state(&st);
        let back = project_extended(&ext, st.m);
        for p in [Vec3::new(0.3, 0.1, 0.9), Vec3::new(-0.2, 0.6, 1.4)] {
            assert!((back.u(p) - st.u(p)).norm() < 1e-14);
        }
    }

    #[test]
    fn rototranslation_is_a_group_action() {
        let a = WidthParam::new(0.5).unwrap();
        let st = make_pol_state(&GaussianPolState::new(a, gamma_circular(-1)).unwrap()).unwrap();
        let ext = embed_photon_state(&st);
        // two rotations around the same axis compose by angle addition
        let n = Vec3::new(0.0, 1.0, 0.0);
        let (t1, t2) = (Vec3::new(0.1, 0.0, -0.2), Vec3::new(0.3, 0.5, 0.0));
        let (phi1, phi2) = (0.4, 0.9);
        let step = apply_rototranslation(&apply_rototranslation(&ext, t1, n, phi1), t2, n, phi2);
        // composed translation: t2 + R2 t1 for U(t2,R2)U(t1,R1) = U(t2 + R2 t1, R2 R1)
        let r2 = rotation_matrix(n, phi2);
        let combined =
            apply_rototranslation(&ext, t2 + rotate_vec(&r2, t1), n, phi1 + phi2);
        for p in [Vec3::new(0.3, 0.2, 1.1), Vec3::new(-0.7, 0.4, 0.8)] {
            let d = (step.f(p) - combined.f(p)).norm();
            assert!(d < 1e-12, "group action residual {d}");
        }
        // identity acts trivially
        let id = apply_rototranslation(&ext, Vec3::ZERO, Vec3::EZ, 0.0);
        let p = Vec3::new(0.5, -0.1, 0.9);
        assert!((id.f(p) - ext.f(p)).norm() < 1e-14);
    }

    #[test]
    fn circular_gamma_combinations() {
        let gp = gamma_circular(1);
        assert!((gp[0] - c(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((gp[1] - I * std::f64::consts::FRAC_1_SQRT_2).norm() < 1e-15);
    }
}
