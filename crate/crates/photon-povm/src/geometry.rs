//! Momentum-dependent frames, the V isomorphism, spin-1 matrices and
//! projectors. All constant-size linear algebra at a single momentum point.

use crate::linalg::{CMat3, CVec3, Vec3, I};
use crate::{Error, Result};
use std::f64::consts::FRAC_1_SQRT_2;

/// Default tolerance for the frame degeneracy test, relative to |p|.
pub const EPS_FRAME: f64 = 1e-12;

/// Spin-1 matrices in units of ħ: Sx, Sy, Sz with [Sx,Sy] = iSz and cyclic.
pub fn spin_matrices() -> [CMat3; 3] {
    let s = FRAC_1_SQRT_2;
    let sx = CMat3::from_rows_real([[0.0, s, 0.0], [s, 0.0, s], [0.0, s, 0.0]]);
    let mut sy = CMat3::ZERO;
    sy.0[0][1] = -I * s;
    sy.0[1][0] = I * s;
    sy.0[1][2] = -I * s;
    sy.0[2][1] = I * s;
    let sz = CMat3::diag_real([1.0, 0.0, -1.0]);
    [sx, sy, sz]
}

/// The constant unitary V relating the Cartesian basis to the spin basis.
pub fn v_matrix() -> CMat3 {
    let s = FRAC_1_SQRT_2;
    let mut v = CMat3::ZERO;
    v.0[0][0] = s.into();
    v.0[0][1] = -I * s;
    v.0[1][2] = (-1.0).into();
    v.0[2][0] = (-s).into();
    v.0[2][1] = -I * s;
    v
}

/// n·S for a unit vector n, in units of ħ.
pub fn spin_along(n: Vec3) -> CMat3 {
    let [sx, sy, sz] = spin_matrices();
    sx.scale_re(n.x) + sy.scale_re(n.y) + sz.scale_re(n.z)
}

/// SO(3) rotation by angle `phi` around unit axis `n` (Rodrigues).
pub fn rotation_matrix(n: Vec3, phi: f64) -> [[f64; 3]; 3] {
    let (s, c) = phi.sin_cos();
    let omc = 1.0 - c;
    let (x, y, z) = (n.x, n.y, n.z);
    [
        [c + x * x * omc, x * y * omc - z * s, x * z * omc + y * s],
        [y * x * omc + z * s, c + y * y * omc, y * z * omc - x * s],
        [z * x * omc - y * s, z * y * omc + x * s, c + z * z * omc],
    ]
}

pub fn rotate_vec(r: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
        r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
        r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
    )
}

pub fn transpose_rotate_vec(r: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        r[0][0] * v.x + r[1][0] * v.y + r[2][0] * v.z,
        r[0][1] * v.x + r[1][1] * v.y + r[2][1] * v.z,
        r[0][2] * v.x + r[1][2] * v.y + r[2][2] * v.z,
    )
}

/// exp(-i phi n·S) in closed form; for spin 1, A = n·S satisfies A³ = A, so
/// exp(-i phi A) = 1 - i A sin(phi) + A² (cos(phi) - 1).
pub fn spin_rotation(n: Vec3, phi: f64) -> CMat3 {
    let a = spin_along(n);
    let a2 = a * a;
    CMat3::identity() + a.scale(-I * phi.sin()) + a2.scale_re(phi.cos() - 1.0)
}

/// The p-dependent orthonormal triad built from the reference vector m.
/// e3 = p/|p|, e2 = m×p/|m×p|, e1 = e3 × e2 (so e1 × e2 = -e3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
}

pub fn intrinsic_frame(p: Vec3, m: Vec3) -> Result<Frame> {
    intrinsic_frame_tol(p, m, EPS_FRAME)
}

pub fn intrinsic_frame_tol(p: Vec3, m: Vec3, eps: f64) -> Result<Frame> {
    let np = p.norm();
    if np == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let v = m.cross(p);
    let nv = v.norm();
    if nv <= eps * np {
        return Err(Error::DegenerateFrame { tol: eps });
    }
    let e3 = p * (1.0 / np);
    let e2 = v * (1.0 / nv);
    let e1 = e3.cross(e2);
    Ok(Frame { e1, e2, e3 })
}

/// Circular polarization vectors e± = (e1 ∓ i e2)/√2; they satisfy
/// p × e± = ∓ i |p| e±.
pub fn circular_vectors(frame: &Frame) -> (CVec3, CVec3) {
    let s = FRAC_1_SQRT_2;
    let e1 = CVec3::from_real(frame.e1);
    let e2 = CVec3::from_real(frame.e2);
    let plus = (e1 + e2.scale(-I)).scale(s.into());
    let minus = (e1 + e2.scale(I)).scale(s.into());
    (plus, minus)
}

/// Helicity matrix ε(p) = S·p̂ (units of ħ); eigenvalues {+1, 0, -1}.
pub fn helicity_matrix(p: Vec3) -> Result<CMat3> {
    let np = p.norm();
    if np == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    Ok(spin_along(p * (1.0 / np)))
}

/// Transverse projector π(p) = 1 - p̂ p̂ᵀ (Cartesian basis).
pub fn transverse_projector(p: Vec3) -> Result<CMat3> {
    let n2 = p.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let phat = CVec3::from_real(p * (1.0 / n2.sqrt()));
    Ok(CMat3::identity() - CMat3::outer(phat, phat))
}

/// Π(p) = V π(p) V† — the transverse projector conjugated into the spin
/// basis. Equals 1 - q q† with q = V p̂.
pub fn conjugated_projector(p: Vec3) -> Result<CMat3> {
    let n2 = p.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let q = v_matrix().mul_vec(CVec3::from_real(p * (1.0 / n2.sqrt())));
    Ok(CMat3::identity() - CMat3::outer(q, q))
}

/// Spectral decomposition of S·n: returns (m_s, eigenvector) for
/// m_s = +1, 0, -1 in that order, with a deterministic phase convention
/// (largest-magnitude component real positive).
///
/// Uses the exact spectral projectors of a spin-1 matrix,
/// P(±1) = (A² ± A)/2 and P(0) = 1 - A², instead of a general eigensolver.
pub fn sn_eigenbasis(n: Vec3) -> [(i32, CVec3); 3] {
    let a = spin_along(n);
    let a2 = a * a;
    let projectors = [
        (1, (a2 + a).scale_re(0.5)),
        (0, CMat3::identity() - a2),
        (-1, (a2 - a).scale_re(0.5)),
    ];
    projectors.map(|(ms, proj)| {
        // pick the column with the largest norm; the projector has rank 1
        let mut best = CVec3::ZERO;
        let mut best_n = -1.0;
        for j in 0..3 {
            let col = CVec3::new(proj.0[0][j], proj.0[1][j], proj.0[2][j]);
            let nn = col.norm_sq();
            if nn > best_n {
                best_n = nn;
                best = col;
            }
        }
        (ms, fix_phase(best.scale((1.0 / best.norm()).into())))
    })
}

/// Rotate the largest-magnitude component onto the positive real axis.
fn fix_phase(v: CVec3) -> CVec3 {
    let mut k = 0;
    for j in 1..3 {
        if v.0[j].norm() > v.0[k].norm() {
            k = j;
        }
    }
    let ph = v.0[k] / v.0[k].norm();
    v.scale(ph.conj())
}

/// Analytic derivatives of the frame vectors: `de[i][j]` = ∂e_{i+1}/∂p_j.
#[derive(Debug, Clone, Copy)]
pub struct FrameGradient {
    pub de: [[Vec3; 3]; 3],
}

pub fn frame_gradient(p: Vec3, m: Vec3) -> Result<(Frame, FrameGradient)> {
    let f = intrinsic_frame(p, m)?;
    let np = p.norm();
    let v = m.cross(p);
    let nv = v.norm();
    let mut de = [[Vec3::ZERO; 3]; 3];
    for j in 0..3 {
        let ej = Vec3::basis(j);
        // d e3 / d p_j = (e_j - e3 (e3·e_j)) / |p|
        let de3 = (ej - f.e3 * f.e3.comp(j)) * (1.0 / np);
        // d e2 / d p_j = (1 - e2 e2ᵀ)(m × e_j)/|m×p|
        let dv = m.cross(ej);
        let de2 = (dv - f.e2 * f.e2.dot(dv)) * (1.0 / nv);
        // e1 = e3 × e2
        let de1 = de3.cross(f.e2) + f.e3.cross(de2);
        de[0][j] = de1;
        de[1][j] = de2;
        de[2][j] = de3;
    }
    Ok((f, FrameGradient { de }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{CMat3, C64};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn frame_at_z_with_m_x() {
        let f = intrinsic_frame(Vec3::EZ, Vec3::EX).unwrap();
        assert!((f.e1 - Vec3::EX).norm() < 1e-15);
        assert!((f.e2 - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-15);
        assert!((f.e3 - Vec3::EZ).norm() < 1e-15);
    }

    #[test]
    fn frame_degenerate_when_parallel() {
        assert!(matches!(
            intrinsic_frame(Vec3::EZ, Vec3::EZ),
            Err(Error::DegenerateFrame { .. })
        ));
        assert!(matches!(
            intrinsic_frame(Vec3::ZERO, Vec3::EX),
            Err(Error::ZeroMomentum)
        ));
    }

    #[test]
    fn circular_vectors_at_z() {
        let f = intrinsic_frame(Vec3::EZ, Vec3::EX).unwrap();
        let (ep, _em) = circular_vectors(&f);
        // e+ = ((1,0,0) + i(0,1,0))/√2
        let want = CVec3::new(
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, FRAC_1_SQRT_2),
            c(0.0, 0.0),
        );
        assert!((ep - want).norm() < 1e-15);
    }

    #[test]
    fn circular_vectors_eigen_equation() {
        // p × e± = ∓ i |p| e±, and <e+, e-> = 0
        let p = Vec3::new(0.3, -1.2, 0.7);
        let m = Vec3::new(0.2, 0.5, -0.8).normalized();
        let f = intrinsic_frame(p, m).unwrap();
        let (ep, em) = circular_vectors(&f);
        let np = p.norm();
        // p × e+ + i|p| e+ = 0
        let r_plus = ep.cross_real(p).scale((-1.0).into()) + ep.scale(I * np);
        // cross_real computes self×v, we need p×e = -(e×p)
        assert!(r_plus.norm() < 1e-12 * np, "residual {}", r_plus.norm());
        let r_minus = em.cross_real(p).scale((-1.0).into()) - em.scale(I * np);
        assert!(r_minus.norm() < 1e-12 * np);
        assert!(ep.dot(em).norm() < 1e-14);
    }

    #[test]
    fn v_is_unitary() {
        let v = v_matrix();
        let diff = (v.adjoint() * v).max_abs_diff(&CMat3::identity());
        assert!(diff < 1e-15);
    }

    #[test]
    fn su2_so3_rotation_identity_around_z() {
        // V† exp(-i phi Sz) V = R_z(phi)
        let phi = 0.731;
        let v = v_matrix();
        let lhs = v.adjoint() * spin_rotation(Vec3::EZ, phi) * v;
        let r = rotation_matrix(Vec3::EZ, phi);
        let rhs = CMat3::from_rows_real(r);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn helicity_eigenstructure() {
        let eps = helicity_matrix(Vec3::EZ).unwrap();
        assert!(eps.max_abs_diff(&CMat3::diag_real([1.0, 0.0, -1.0])) < 1e-15);

        let p = Vec3::new(1.1, -0.4, 0.6);
        let m = Vec3::new(0.0, 1.0, 0.0);
        let f = intrinsic_frame(p, m).unwrap();
        let (ep, em) = circular_vectors(&f);
        let v = v_matrix();
        let eps = helicity_matrix(p).unwrap();
        // V e± are eigenvectors with eigenvalues ±1, V e3 with 0
        let wp = v.mul_vec(ep);
        assert!((eps.mul_vec(wp) - wp).norm() < 1e-12);
        let wm = v.mul_vec(em);
        assert!((eps.mul_vec(wm) + wm).norm() < 1e-12);
        let w0 = v.mul_vec(CVec3::from_real(f.e3));
        assert!(eps.mul_vec(w0).norm() < 1e-12);
        // traceless
        assert!(eps.trace().norm() < 1e-14);
        // cubic identity ε³ = ε
        assert!((eps * eps * eps).max_abs_diff(&eps) < 1e-12);
    }

    #[test]
    fn projectors() {
        let pi = transverse_projector(Vec3::EZ).unwrap();
        assert!(pi.max_abs_diff(&CMat3::diag_real([1.0, 1.0, 0.0])) < 1e-15);

        let p = Vec3::new(-0.3, 0.9, 0.4);
        let pi = transverse_projector(p).unwrap();
        assert!((pi * pi).max_abs_diff(&pi) < 1e-13);
        assert!((pi.trace() - c(2.0, 0.0)).norm() < 1e-13);
        assert!(pi.mul_vec(CVec3::from_real(p)).norm() < 1e-13);

        // Π = V π V†: annihilates V e3, idempotent, diag(1,0,1) at p = ez
        let cp = conjugated_projector(p).unwrap();
        assert!((cp * cp).max_abs_diff(&cp) < 1e-13);
        let f = intrinsic_frame(p, Vec3::EX).unwrap();
        let w0 = v_matrix().mul_vec(CVec3::from_real(f.e3));
        assert!(cp.mul_vec(w0).norm() < 1e-13);
        let cpz = conjugated_projector(Vec3::EZ).unwrap();
        assert!(cpz.max_abs_diff(&CMat3::diag_real([1.0, 0.0, 1.0])) < 1e-14);
    }

    #[test]
    fn frame_is_orthonormal_and_pi_completeness() {
        let p = Vec3::new(0.7, 0.2, -1.5);
        let m = Vec3::new(-0.1, 0.8, 0.3).normalized();
        let f = intrinsic_frame(p, m).unwrap();
        for (a, b) in [(f.e1, f.e2), (f.e1, f.e3), (f.e2, f.e3)] {
            assert!(a.dot(b).abs() < 1e-14);
        }
        for e in [f.e1, f.e2, f.e3] {
            assert!((e.norm() - 1.0).abs() < 1e-14);
        }
        // e1 = e3 × e2 (left-handed triple e1 × e2 = -e3, as the defining
        // cross products imply)
        assert!((f.e1.cross(f.e2) + f.e3).norm() < 1e-14);
        // π = e1 e1ᵀ + e2 e2ᵀ
        let pi = transverse_projector(p).unwrap();
        let sum = CMat3::outer(CVec3::from_real(f.e1), CVec3::from_real(f.e1))
            + CMat3::outer(CVec3::from_real(f.e2), CVec3::from_real(f.e2));
        assert!(pi.max_abs_diff(&sum) < 1e-12);
    }

    #[test]
    fn sn_eigenbasis_along_z_and_general() {
        let basis = sn_eigenbasis(Vec3::EZ);
        assert_eq!(basis[0].0, 1);
        assert!((basis[0].1 - CVec3::new(c(1., 0.), c(0., 0.), c(0., 0.))).norm() < 1e-14);
        assert!((basis[1].1 - CVec3::new(c(0., 0.), c(1., 0.), c(0., 0.))).norm() < 1e-14);
        assert!((basis[2].1 - CVec3::new(c(0., 0.), c(0., 0.), c(1., 0.))).norm() < 1e-14);

        for n in [Vec3::EX, Vec3::new(0.48, -0.6, 0.64)] {
            let sn = spin_along(n);
            let basis = sn_eigenbasis(n);
            let mut resolution = CMat3::ZERO;
            for (ms, v) in &basis {
                let res = (sn.mul_vec(*v) - v.scale((*ms as f64).into())).norm();
                assert!(res < 1e-12, "eigen residual {res} for ms={ms}");
                resolution = resolution + CMat3::outer(*v, *v).scale_re(*ms as f64);
            }
            // spectral resolution rebuilds S·n
            assert!(resolution.max_abs_diff(&sn) < 1e-12);
            // orthonormal
            for i in 0..3 {
                for j in 0..3 {
                    let d = basis[i].1.dot(basis[j].1);
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((d - c(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn frame_gradient_unit_norm_constraint() {
        let p = Vec3::new(0.9, -0.2, 1.4);
        let m = Vec3::EX;
        let (f, g) = frame_gradient(p, m).unwrap();
        let es = [f.e1, f.e2, f.e3];
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    es[i].dot(g.de[i][j]).abs() < 1e-12,
                    "e{i}·de{i}/dp{j} not zero"
                );
            }
        }
    }

    #[test]
    fn frame_gradient_matches_finite_differences() {
        let m = Vec3::new(0.3, -0.5, 0.81).normalized();
        let pts = [
            Vec3::new(0.9, -0.2, 1.4),
            Vec3::new(-1.2, 0.4, 0.3),
            Vec3::new(0.05, 1.3, -0.7),
        ];
        for p in pts {
            let (_, g) = frame_gradient(p, m).unwrap();
            let h = 1e-6 * p.norm();
            for j in 0..3 {
                let dp = Vec3::basis(j) * h;
                let fp = intrinsic_frame(p + dp, m).unwrap();
                let fm = intrinsic_frame(p - dp, m).unwrap();
                let fd = [
                    (fp.e1 - fm.e1) * (0.5 / h),
                    (fp.e2 - fm.e2) * (0.5 / h),
                    (fp.e3 - fm.e3) * (0.5 / h),
                ];
                for i in 0..3 {
                    let diff = (fd[i] - g.de[i][j]).norm();
                    assert!(diff < 1e-6, "de{i}/dp{j} fd diff {diff}");
                }
            }
        }
    }

    #[test]
    fn frame_gradient_z_axis_case() {
        // at p = ez, m = ex: ∂e3/∂p_x = (1,0,0)
        let (_, g) = frame_gradient(Vec3::EZ, Vec3::EX).unwrap();
        assert!((g.de[2][0] - Vec3::EX).norm() < 1e-14);
    }
}
