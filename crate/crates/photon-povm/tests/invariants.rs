//! Property-based structural invariants over randomized inputs.

use photon_povm::geometry::{
    circular_vectors, frame_gradient, helicity_matrix, intrinsic_frame, rotate_vec,
    rotation_matrix, sn_eigenbasis, spin_matrices, spin_rotation, transverse_projector, v_matrix,
};
use photon_povm::linalg::{CMat3, CVec3, Vec3, I};
use photon_povm::specfun::{dawson, u_functions, WidthParam};
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = Vec3> {
    (
        -2.0f64..2.0,
        -2.0f64..2.0,
        -2.0f64..2.0,
    )
        .prop_map(|(x, y, z)| Vec3::new(x, y, z))
        .prop_filter("away from origin", |v| v.norm() > 0.2)
}

fn unit3() -> impl Strategy<Value = Vec3> {
    vec3().prop_map(|v| v.normalized())
}

proptest! {
    #[test]
    fn dawson_odd(x in -30.0f64..30.0) {
        prop_assert_eq!(dawson(-x).to_bits(), (-dawson(x)).to_bits());
    }

    #[test]
    fn dawson_bounded_by_maximum(x in -50.0f64..50.0) {
        // |D| <= D(x*) = 0.54104422...
        prop_assert!(dawson(x).abs() <= 0.5410442246351817 + 1e-15);
    }

    #[test]
    fn u_functions_bounded(loga in -6.0f64..6.0) {
        let a = 10f64.powf(loga);
        let u = u_functions(WidthParam::new(a).unwrap());
        prop_assert!(u.u2 > 0.0 && u.u2 < 1.0);
        prop_assert!(u.u4 > 0.0 && u.u4 < 1.0);
        // completeness identity
        let s = 2.0 * (1.0/3.0 + u.u1/6.0) + 2.0 * a * u.u2;
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_orthonormal_and_covariant(p in vec3(), m in unit3(),
                                       axis in unit3(), angle in -3.0f64..3.0) {
        prop_assume!(m.cross(p).norm() > 0.05 * p.norm());
        let f = intrinsic_frame(p, m).unwrap();
        for e in [f.e1, f.e2, f.e3] {
            prop_assert!((e.norm() - 1.0).abs() < 1e-12);
        }
        prop_assert!(f.e1.dot(f.e2).abs() < 1e-12);
        prop_assert!(f.e1.dot(f.e3).abs() < 1e-12);
        prop_assert!(f.e2.dot(f.e3).abs() < 1e-12);
        // e1 = e3 x e2
        prop_assert!((f.e3.cross(f.e2) - f.e1).norm() < 1e-12);
        // covariance under rotations
        let r = rotation_matrix(axis, angle);
        let fr = intrinsic_frame(rotate_vec(&r, p), rotate_vec(&r, m)).unwrap();
        prop_assert!((fr.e1 - rotate_vec(&r, f.e1)).norm() < 1e-12);
        prop_assert!((fr.e2 - rotate_vec(&r, f.e2)).norm() < 1e-12);
        prop_assert!((fr.e3 - rotate_vec(&r, f.e3)).norm() < 1e-12);
    }

    #[test]
    fn projector_properties(p in vec3()) {
        let pi = transverse_projector(p).unwrap();
        prop_assert!((pi * pi).max_abs_diff(&pi) < 1e-13);
        prop_assert!((pi.trace().re - 2.0).abs() < 1e-13);
        prop_assert!(pi.mul_vec(CVec3::from_real(p)).norm() < 1e-13 * p.norm());
        // frame completeness pi = e1 e1^T + e2 e2^T
        let f = intrinsic_frame(p, Vec3::EX);
        if let Ok(f) = f {
            let sum = CMat3::outer(CVec3::from_real(f.e1), CVec3::from_real(f.e1))
                + CMat3::outer(CVec3::from_real(f.e2), CVec3::from_real(f.e2));
            prop_assert!(pi.max_abs_diff(&sum) < 1e-12);
        }
    }

    #[test]
    fn helicity_cubic_identity(p in vec3()) {
        let eps = helicity_matrix(p).unwrap();
        prop_assert!((eps * eps * eps).max_abs_diff(&eps) < 1e-12);
        prop_assert!(eps.trace().norm() < 1e-13);
    }

    #[test]
    fn su2_so3_identity(n in unit3(), phi in -3.2f64..3.2) {
        let v = v_matrix();
        let lhs = v.adjoint() * spin_rotation(n, phi) * v;
        let rhs = CMat3::from_rows_real(rotation_matrix(n, phi));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn circular_vectors_eigen(p in vec3(), m in unit3()) {
        prop_assume!(m.cross(p).norm() > 0.05 * p.norm());
        let f = intrinsic_frame(p, m).unwrap();
        let (ep, em) = circular_vectors(&f);
        let np = p.norm();
        // p x e± = ∓ i|p| e±  (cross_real computes e x p = -(p x e))
        let rp = ep.cross_real(p).scale((-1.0).into()) + ep.scale(I * np);
        prop_assert!(rp.norm() < 1e-12 * np);
        let rm = em.cross_real(p).scale((-1.0).into()) - em.scale(I * np);
        prop_assert!(rm.norm() < 1e-12 * np);
        prop_assert!(ep.dot(em).norm() < 1e-13);
    }

    #[test]
    fn sn_spectral_resolution(n in unit3()) {
        let [sx, sy, sz] = spin_matrices();
        let sn = sx.scale_re(n.x) + sy.scale_re(n.y) + sz.scale_re(n.z);
        let basis = sn_eigenbasis(n);
        let mut resolution = CMat3::ZERO;
        for (ms, v) in &basis {
            prop_assert!((sn.mul_vec(*v) - v.scale((*ms as f64).into())).norm() < 1e-12);
            resolution = resolution + CMat3::outer(*v, *v).scale_re(*ms as f64);
        }
        prop_assert!(resolution.max_abs_diff(&sn) < 1e-12);
    }

    #[test]
    fn frame_gradient_tangency(p in vec3(), m in unit3()) {
        prop_assume!(m.cross(p).norm() > 0.05 * p.norm());
        let (f, g) = frame_gradient(p, m).unwrap();
        let es = [f.e1, f.e2, f.e3];
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(es[i].dot(g.de[i][j]).abs() < 1e-11);
            }
        }
    }
}
