//! Classical lamination computations: transformed plane-stress and shear
//! stiffness per lamina, and the section stiffness matrices A, B, D, As
//! integrated through the thickness from interface coordinates.
//!
//! Transverse shear components are ordered `(gamma_yz, gamma_xz)` throughout.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};

use crate::{Error, Result};

/// In-plane and transverse elastic constants of one lamina, principal axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaminaMaterial {
    pub e1: f64,
    pub e2: f64,
    pub g12: f64,
    pub g23: f64,
    pub g13: f64,
    pub nu12: f64,
}

impl LaminaMaterial {
    pub fn isotropic(e: f64, nu: f64) -> Self {
        let g = e / (2.0 * (1.0 + nu));
        Self { e1: e, e2: e, g12: g, g23: g, g13: g, nu12: nu }
    }

    /// Orthotropic material from the usual nondimensional ratios, with
    /// `E2` as the reference modulus.
    pub fn orthotropic_ratios(e1_over_e2: f64, g12_over_e2: f64, g23_over_e2: f64, nu12: f64, e2: f64) -> Self {
        Self {
            e1: e1_over_e2 * e2,
            e2,
            g12: g12_over_e2 * e2,
            g23: g23_over_e2 * e2,
            g13: g12_over_e2 * e2,
            nu12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let moduli = [self.e1, self.e2, self.g12, self.g23, self.g13];
        if moduli.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::Material("all moduli must be positive".into()));
        }
        if !(self.nu12 > 0.0 && self.nu12 < 0.5) {
            return Err(Error::Material(format!("nu12 = {} outside (0, 0.5)", self.nu12)));
        }
        if self.nu12 * self.nu12 * self.e2 / self.e1 >= 1.0 {
            return Err(Error::Material("plane-stress stiffness not positive definite".into()));
        }
        Ok(())
    }
}

/// Plane-stress stiffness Q (3x3) and transverse shear stiffness Qs (2x2)
/// in the material axes.
pub fn reduced_stiffness(mat: &LaminaMaterial) -> Result<(Matrix3<f64>, Matrix2<f64>)> {
    mat.validate()?;
    let nu21 = mat.nu12 * mat.e2 / mat.e1;
    let den = 1.0 - mat.nu12 * nu21;
    let q = Matrix3::new(
        mat.e1 / den,
        mat.nu12 * mat.e2 / den,
        0.0,
        mat.nu12 * mat.e2 / den,
        mat.e2 / den,
        0.0,
        0.0,
        0.0,
        mat.g12,
    );
    let qs = Matrix2::new(mat.g23, 0.0, 0.0, mat.g13);
    Ok((q, qs))
}

/// Rotates lamina stiffness from material axes to global axes for a fiber
/// angle `theta` in degrees (Reddy's convention). Implemented as the exact
/// fourth-order tensor rotation, so rotations compose and invert cleanly
/// for arbitrary (already rotated) input.
pub fn transform_stiffness(
    q: &Matrix3<f64>,
    qs: &Matrix2<f64>,
    theta_deg: f64,
) -> (Matrix3<f64>, Matrix2<f64>) {
    let t = theta_deg * core::f64::consts::PI / 180.0;
    let c = t.cos();
    let s = t.sin();
    // material-to-global direction cosines
    let a = [[c, -s], [s, c]];
    // Voigt map: (0,0) -> 0, (1,1) -> 1, mixed -> 2; engineering-shear
    // stiffness components map one-to-one onto tensor components
    let idx = |i: usize, j: usize| if i == j { i } else { 2 };
    let mut qbar = Matrix3::zeros();
    for p in 0..2 {
        for r in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    let mut sum = 0.0;
                    for i in 0..2 {
                        for j in 0..2 {
                            for k in 0..2 {
                                for l in 0..2 {
                                    sum += a[p][i]
                                        * a[r][j]
                                        * a[u][k]
                                        * a[v][l]
                                        * q[(idx(i, j), idx(k, l))];
                                }
                            }
                        }
                    }
                    qbar[(idx(p, r), idx(u, v))] = sum;
                }
            }
        }
    }

    // shear block in (yz, xz) ordering rotates as a rank-2 tensor
    let b = [[c, s], [-s, c]];
    let mut qsbar = Matrix2::zeros();
    for p in 0..2 {
        for r in 0..2 {
            let mut sum = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    sum += b[p][i] * b[r][j] * qs[(i, j)];
                }
            }
            qsbar[(p, r)] = sum;
        }
    }

    (qbar, qsbar)
}

/// Stacking sequence with per-ply transformed stiffness cached at build time.
#[derive(Debug, Clone)]
pub struct Layup {
    angles: Vec<f64>,
    qbar: Vec<(Matrix3<f64>, Matrix2<f64>)>,
}

impl Layup {
    /// Single material for all plies, angles in degrees, bottom lamina first.
    pub fn new(angles: &[f64], material: LaminaMaterial) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::Material("layup needs at least one lamina".into()));
        }
        let (q, qs) = reduced_stiffness(&material)?;
        let qbar = angles
            .iter()
            .map(|&a| transform_stiffness(&q, &qs, a))
            .collect();
        Ok(Self { angles: angles.to_vec(), qbar })
    }

    pub fn lamina_count(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn transformed(&self, k: usize) -> &(Matrix3<f64>, Matrix2<f64>) {
        &self.qbar[k]
    }
}

/// Position-dependent section stiffness: extensional A, coupling B,
/// bending D (all 3x3) and transverse shear As (2x2).
#[derive(Debug, Clone, PartialEq)]
pub struct SectionStiffness {
    pub a: Matrix3<f64>,
    pub b: Matrix3<f64>,
    pub d: Matrix3<f64>,
    pub a_s: Matrix2<f64>,
}

/// Integrates A, B, D, As through the thickness from the interface
/// coordinates `z[0] .. z[n]` (strictly increasing, one more than plies).
/// `ks` is the shear correction factor applied to As.
pub fn section_stiffness(layup: &Layup, interfaces: &[f64], ks: f64) -> Result<SectionStiffness> {
    let n = layup.lamina_count();
    if interfaces.len() != n + 1 {
        return Err(Error::Geometry(format!(
            "expected {} interface coordinates for {} laminae, got {}",
            n + 1,
            n,
            interfaces.len()
        )));
    }
    if interfaces.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Geometry("interface coordinates must be strictly increasing".into()));
    }

    let mut a = Matrix3::zeros();
    let mut b = Matrix3::zeros();
    let mut d = Matrix3::zeros();
    let mut a_s = Matrix2::zeros();
    for k in 0..n {
        let (qb, qsb) = layup.transformed(k);
        let (z0, z1) = (interfaces[k], interfaces[k + 1]);
        a += qb * (z1 - z0);
        b += qb * (0.5 * (z1 * z1 - z0 * z0));
        d += qb * ((z1 * z1 * z1 - z0 * z0 * z0) / 3.0);
        a_s += qsb * (ks * (z1 - z0));
    }
    Ok(SectionStiffness { a, b, d, a_s })
}

/// Membrane, moment and shear resultants from the generalized strains.
pub fn resultants(
    section: &SectionStiffness,
    eps: &Vector3<f64>,
    kappa: &Vector3<f64>,
    gamma: &Vector2<f64>,
) -> (Vector3<f64>, Vector3<f64>, Vector2<f64>) {
    let n = section.a * eps + section.b * kappa;
    let m = section.b * eps + section.d * kappa;
    let q = section.a_s * gamma;
    (n, m, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn iso() -> LaminaMaterial {
        LaminaMaterial::isotropic(3.0e6, 0.25)
    }

    fn composite() -> LaminaMaterial {
        LaminaMaterial::orthotropic_ratios(25.0, 0.5, 0.2, 0.25, 1.0)
    }

    #[test]
    fn isotropic_reduced_stiffness() {
        let (q, qs) = reduced_stiffness(&iso()).unwrap();
        assert_relative_eq!(q[(0, 0)], 3.2e6, max_relative = 1e-14);
        assert_relative_eq!(q[(1, 1)], 3.2e6, max_relative = 1e-14);
        assert_relative_eq!(q[(0, 1)], 8.0e5, max_relative = 1e-14);
        assert_relative_eq!(q[(2, 2)], 1.2e6, max_relative = 1e-14);
        assert_relative_eq!(qs[(0, 0)], 1.2e6, max_relative = 1e-14);
    }

    #[test]
    fn orthotropic_reduced_stiffness() {
        let (q, _) = reduced_stiffness(&composite()).unwrap();
        // nu21 = 0.25/25 = 0.01, den = 1 - 0.0025
        assert_relative_eq!(q[(0, 0)], 25.0 / 0.9975, max_relative = 1e-14);
        assert_relative_eq!(q[(1, 1)], 1.0 / 0.9975, max_relative = 1e-14);
        assert_relative_eq!(q[(0, 1)], 0.25 / 0.9975, max_relative = 1e-14);
        // symmetric positive definite
        assert!(q[(0, 0)] * q[(1, 1)] - q[(0, 1)] * q[(0, 1)] > 0.0);
    }

    #[test]
    fn rejects_bad_materials() {
        let mut m = iso();
        m.e1 = -1.0;
        assert!(reduced_stiffness(&m).is_err());
        let mut m = iso();
        m.nu12 = 0.6;
        assert!(reduced_stiffness(&m).is_err());
    }

    #[test]
    fn rotation_identity_and_axis_swap() {
        let (q, qs) = reduced_stiffness(&composite()).unwrap();
        let (q0, qs0) = transform_stiffness(&q, &qs, 0.0);
        assert_relative_eq!((q0 - q).norm(), 0.0, epsilon = 1e-10);
        assert_relative_eq!((qs0 - qs).norm(), 0.0, epsilon = 1e-10);

        let (q90, _) = transform_stiffness(&q, &qs, 90.0);
        assert_relative_eq!(q90[(0, 0)], q[(1, 1)], max_relative = 1e-12);
        assert_relative_eq!(q90[(1, 1)], q[(0, 0)], max_relative = 1e-12);
        assert_relative_eq!(q90[(0, 1)], q[(0, 1)], max_relative = 1e-12);
        assert_relative_eq!(q90[(0, 2)], 0.0, epsilon = 1e-9);
        assert_relative_eq!(q90[(1, 2)], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn isotropy_invariant_under_rotation() {
        let (q, qs) = reduced_stiffness(&iso()).unwrap();
        let (q45, qs45) = transform_stiffness(&q, &qs, 45.0);
        assert_relative_eq!((q45 - q).norm(), 0.0, epsilon = 1e-7 * q.norm());
        assert_relative_eq!((qs45 - qs).norm(), 0.0, epsilon = 1e-10 * qs.norm());
    }

    #[test]
    fn rotation_matches_classical_formulas() {
        let (q, _) = reduced_stiffness(&composite()).unwrap();
        let (q11, q12, q22, q66) = (q[(0, 0)], q[(0, 1)], q[(1, 1)], q[(2, 2)]);
        for theta in [13.0f64, 30.0, 45.0, 77.5] {
            let t = theta.to_radians();
            let (s, c) = t.sin_cos();
            let (c2, s2) = (c * c, s * s);
            let expected_11 = q11 * c2 * c2 + 2.0 * (q12 + 2.0 * q66) * s2 * c2 + q22 * s2 * s2;
            let expected_16 =
                (q11 - q12 - 2.0 * q66) * s * c2 * c + (q12 - q22 + 2.0 * q66) * s2 * s * c;
            let expected_66 =
                (q11 + q22 - 2.0 * q12 - 2.0 * q66) * s2 * c2 + q66 * (s2 * s2 + c2 * c2);
            let (qb, _) = transform_stiffness(&q, &reduced_stiffness(&composite()).unwrap().1, theta);
            assert_relative_eq!(qb[(0, 0)], expected_11, max_relative = 1e-12);
            assert_relative_eq!(qb[(0, 2)], expected_16, max_relative = 1e-12);
            assert_relative_eq!(qb[(2, 2)], expected_66, max_relative = 1e-12);
            assert_relative_eq!(qb[(2, 0)], qb[(0, 2)], max_relative = 1e-12);
        }
    }

    #[test]
    fn rotation_round_trip() {
        let (q, qs) = reduced_stiffness(&composite()).unwrap();
        for theta in [13.0, 45.0, 77.5] {
            let (qr, qsr) = transform_stiffness(&q, &qs, theta);
            let (qb, qsb) = transform_stiffness(&qr, &qsr, -theta);
            assert_relative_eq!((qb - q).norm(), 0.0, epsilon = 1e-12 * q.norm());
            assert_relative_eq!((qsb - qs).norm(), 0.0, epsilon = 1e-12 * qs.norm());
        }
    }

    #[test]
    fn single_layer_section_closed_form() {
        let layup = Layup::new(&[0.0], iso()).unwrap();
        let h: f64 = 0.2;
        let s = section_stiffness(&layup, &[-h / 2.0, h / 2.0], 5.0 / 6.0).unwrap();
        assert_relative_eq!(s.a[(0, 0)], 6.4e5, max_relative = 1e-13);
        assert_relative_eq!(s.b.norm(), 0.0, epsilon = 1e-13 * s.a.norm() * h);
        assert_relative_eq!(s.d[(0, 0)], 3.2e6 * h.powi(3) / 12.0, max_relative = 1e-13);
        assert_relative_eq!(s.a_s[(0, 0)], 5.0 / 6.0 * 1.2e6 * h, max_relative = 1e-13);
    }

    #[test]
    fn symmetric_layup_kills_coupling() {
        let layup = Layup::new(&[0.0, 90.0, 90.0, 0.0], composite()).unwrap();
        let s = section_stiffness(&layup, &[-0.1, -0.05, 0.0, 0.05, 0.1], 5.0 / 6.0).unwrap();
        let scale = s.a.amax() * 0.2;
        assert!(s.b.amax() < 1e-10 * scale, "B = {:?}", s.b);
    }

    #[test]
    fn section_rejects_bad_interfaces() {
        let layup = Layup::new(&[0.0, 90.0], composite()).unwrap();
        assert!(section_stiffness(&layup, &[-0.1, 0.1], 5.0 / 6.0).is_err());
        assert!(section_stiffness(&layup, &[-0.1, 0.1, 0.05], 5.0 / 6.0).is_err());
    }

    #[test]
    fn resultants_block_multiplication() {
        let layup = Layup::new(&[0.0, 90.0, 90.0, 0.0], composite()).unwrap();
        let s = section_stiffness(&layup, &[-0.1, -0.05, 0.0, 0.05, 0.1], 5.0 / 6.0).unwrap();

        let zero3 = Vector3::zeros();
        let zero2 = Vector2::zeros();
        let (n, m, q) = resultants(&s, &zero3, &zero3, &zero2);
        assert_eq!((n.norm(), m.norm(), q.norm()), (0.0, 0.0, 0.0));

        // symmetric layup: pure curvature gives moments only
        let kappa = Vector3::new(0.3, -0.1, 0.05);
        let (n, m, _) = resultants(&s, &zero3, &kappa, &zero2);
        assert!(n.norm() < 1e-10 * m.norm());
        assert_relative_eq!((m - s.d * kappa).norm(), 0.0, epsilon = 1e-14 * m.norm());

        // linearity
        let eps = Vector3::new(0.01, 0.02, -0.03);
        let gamma = Vector2::new(0.1, -0.2);
        let (n1, m1, q1) = resultants(&s, &eps, &kappa, &gamma);
        let (n2, m2, q2) = resultants(&s, &(eps * 2.0), &(kappa * 2.0), &(gamma * 2.0));
        assert_relative_eq!((n2 - n1 * 2.0).norm(), 0.0, epsilon = 1e-12 * n1.norm());
        assert_relative_eq!((m2 - m1 * 2.0).norm(), 0.0, epsilon = 1e-12 * m1.norm());
        assert_relative_eq!((q2 - q1 * 2.0).norm(), 0.0, epsilon = 1e-12 * q1.norm());
    }

    #[test]
    fn interface_scaling_powers() {
        let layup = Layup::new(&[0.0, 90.0, 90.0, 0.0], composite()).unwrap();
        let z: [f64; 5] = [-0.1, -0.04, 0.0, 0.04, 0.1];
        let s1 = section_stiffness(&layup, &z, 5.0 / 6.0).unwrap();
        let zs: Vec<f64> = z.iter().map(|v| v * 3.0).collect();
        let s3 = section_stiffness(&layup, &zs, 5.0 / 6.0).unwrap();
        assert_relative_eq!((s3.a - s1.a * 3.0).norm(), 0.0, epsilon = 1e-12 * s1.a.norm());
        assert_relative_eq!((s3.d - s1.d * 27.0).norm(), 0.0, epsilon = 1e-12 * s1.d.norm());
        assert_relative_eq!((s3.a_s - s1.a_s * 3.0).norm(), 0.0, epsilon = 1e-12 * s1.a_s.norm());
    }
}
