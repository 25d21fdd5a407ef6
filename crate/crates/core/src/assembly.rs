//! Strain operators with von-Karman nonlinearity and imperfection coupling,
//! element internal force and consistent tangent, and global assembly.
//!
//! Membrane and bending terms integrate on the full `(p+1) x (q+1)` Gauss
//! rule; transverse shear uses the reduced `p x q` rule from the element
//! tables. The tangent is the exact linearization of the internal force:
//! a material part `B^T C B` plus the geometric part carrying the membrane
//! resultants through the second variation of the transverse slopes.

use alloc::vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::{DMatrix, DVector, Vector2, Vector3};

use crate::model::{
    DisplacementState, ElementTable, PlateModel, QuadPoint, DOF_PER_CP, DOF_PHIX, DOF_PHIY, DOF_U,
    DOF_V, DOF_W,
};
use crate::nurbs::ParamPoint;
use crate::Result;

/// Generalized strains and stress resultants at one evaluation point.
#[derive(Debug, Clone)]
pub struct QuadPointState {
    pub eps: Vector3<f64>,
    pub kappa: Vector3<f64>,
    pub gamma: Vector2<f64>,
    pub n: Vector3<f64>,
    pub m: Vector3<f64>,
    pub q: Vector2<f64>,
}

/// Discrete strain operators at one point, ordered by the active control
/// points of the containing element (5 dofs each).
#[derive(Debug, Clone)]
pub struct StrainOperators {
    /// Active global control-point indices defining the column layout.
    pub control_points: alloc::vec::Vec<usize>,
    pub eps: Vector3<f64>,
    pub kappa: Vector3<f64>,
    pub gamma: Vector2<f64>,
    /// Linear membrane operator (3 x 5n).
    pub b_m: DMatrix<f64>,
    /// Slope-coupling membrane operator at the current state (3 x 5n).
    pub b_nl: DMatrix<f64>,
    /// Bending operator (3 x 5n).
    pub b_b: DMatrix<f64>,
    /// Transverse shear operator (2 x 5n).
    pub b_s: DMatrix<f64>,
    /// Transverse slope operator (2 x 5n).
    pub g: DMatrix<f64>,
}

/// Field gradients of the current state at a quadrature point.
struct PointKinematics {
    eps: Vector3<f64>,
    kappa: Vector3<f64>,
    gamma: Vector2<f64>,
    /// total transverse slope (w + imperfection), x then y
    slope: [f64; 2],
}

fn local_kinematics(
    qp: &QuadPoint,
    cps: &[usize],
    state: &DisplacementState,
    imperfection: &[f64],
) -> PointKinematics {
    let mut ux = 0.0;
    let mut uy = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    let mut wx = 0.0;
    let mut wy = 0.0;
    let mut wbx = 0.0;
    let mut wby = 0.0;
    let mut phix = 0.0;
    let mut phiy = 0.0;
    let mut phix_x = 0.0;
    let mut phix_y = 0.0;
    let mut phiy_x = 0.0;
    let mut phiy_y = 0.0;
    for (i, &cp) in cps.iter().enumerate() {
        let base = cp * DOF_PER_CP;
        let (r, rx, ry) = (qp.r[i], qp.rx[i], qp.ry[i]);
        ux += rx * state[base + DOF_U];
        uy += ry * state[base + DOF_U];
        vx += rx * state[base + DOF_V];
        vy += ry * state[base + DOF_V];
        wx += rx * state[base + DOF_W];
        wy += ry * state[base + DOF_W];
        wbx += rx * imperfection[cp];
        wby += ry * imperfection[cp];
        phix += r * state[base + DOF_PHIX];
        phiy += r * state[base + DOF_PHIY];
        phix_x += rx * state[base + DOF_PHIX];
        phix_y += ry * state[base + DOF_PHIX];
        phiy_x += rx * state[base + DOF_PHIY];
        phiy_y += ry * state[base + DOF_PHIY];
    }

    let eps = Vector3::new(
        ux + 0.5 * wx * wx + wx * wbx,
        vy + 0.5 * wy * wy + wy * wby,
        uy + vx + wx * wy + wbx * wy + wx * wby,
    );
    let kappa = Vector3::new(phix_x, phiy_y, phix_y + phiy_x);
    // Shear measures the additional deflection only: including the
    // imperfection slope here would self-stress the unloaded plate and the
    // first equilibrium state would cancel the imperfection instead of
    // amplifying it.
    let gamma = Vector2::new(phiy + wy, phix + wx);
    PointKinematics {
        eps,
        kappa,
        gamma,
        slope: [wx + wbx, wy + wby],
    }
}

impl PlateModel {
    /// Strains, curvatures, shear strains and resultants at an arbitrary
    /// parameter point for the given state.
    pub fn state_at(&self, state: &DisplacementState, pt: ParamPoint) -> Result<QuadPointState> {
        // build a one-off quadrature record at the query point
        let basis = self.patch.rational_basis_2d(pt)?;
        let cps = self.patch.active_control_points(basis.span_xi, basis.span_eta);
        let (_, jac) = self.patch.surface_point(pt)?;
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let nen = basis.values.len();
        let mut rx = vec![0.0; nen];
        let mut ry = vec![0.0; nen];
        for i in 0..nen {
            rx[i] = (jac[1][1] * basis.d_xi[i] - jac[1][0] * basis.d_eta[i]) / det;
            ry[i] = (-jac[0][1] * basis.d_xi[i] + jac[0][0] * basis.d_eta[i]) / det;
        }
        let ifc = self.thickness.interfaces_at(&self.patch, pt)?;
        let section = crate::laminate::section_stiffness(&self.layup, &ifc.z, self.ks)?;
        let qp = QuadPoint { r: basis.values, rx, ry, weight: det, section };
        let kin = local_kinematics(&qp, &cps, state, &self.imperfection);
        let (n, m, q) = crate::laminate::resultants(&qp.section, &kin.eps, &kin.kappa, &kin.gamma);
        Ok(QuadPointState {
            eps: kin.eps,
            kappa: kin.kappa,
            gamma: kin.gamma,
            n,
            m,
            q,
        })
    }

    /// Strain operators at a parameter point: the exact variations of the
    /// generalized strains with respect to the control-point dofs, with the
    /// von-Karman slope coupling evaluated at the given state.
    pub fn strain_operators(
        &self,
        state: &DisplacementState,
        pt: ParamPoint,
    ) -> Result<StrainOperators> {
        let basis = self.patch.rational_basis_2d(pt)?;
        let cps = self.patch.active_control_points(basis.span_xi, basis.span_eta);
        let (_, jac) = self.patch.surface_point(pt)?;
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let nen = basis.values.len();
        let mut rx = vec![0.0; nen];
        let mut ry = vec![0.0; nen];
        for i in 0..nen {
            rx[i] = (jac[1][1] * basis.d_xi[i] - jac[1][0] * basis.d_eta[i]) / det;
            ry[i] = (-jac[0][1] * basis.d_xi[i] + jac[0][0] * basis.d_eta[i]) / det;
        }
        let ifc = self.thickness.interfaces_at(&self.patch, pt)?;
        let section = crate::laminate::section_stiffness(&self.layup, &ifc.z, self.ks)?;
        let qp = QuadPoint { r: basis.values, rx, ry, weight: det, section };
        let kin = local_kinematics(&qp, &cps, state, &self.imperfection);
        let [tx, ty] = kin.slope;

        let nloc = nen * DOF_PER_CP;
        let mut b_m = DMatrix::zeros(3, nloc);
        let mut b_nl = DMatrix::zeros(3, nloc);
        let mut b_b = DMatrix::zeros(3, nloc);
        let mut b_s = DMatrix::zeros(2, nloc);
        let mut g = DMatrix::zeros(2, nloc);
        for i in 0..nen {
            let (r, rxi, ryi) = (qp.r[i], qp.rx[i], qp.ry[i]);
            let c = i * DOF_PER_CP;
            b_m[(0, c + DOF_U)] = rxi;
            b_m[(1, c + DOF_V)] = ryi;
            b_m[(2, c + DOF_U)] = ryi;
            b_m[(2, c + DOF_V)] = rxi;
            b_nl[(0, c + DOF_W)] = tx * rxi;
            b_nl[(1, c + DOF_W)] = ty * ryi;
            b_nl[(2, c + DOF_W)] = tx * ryi + ty * rxi;
            b_b[(0, c + DOF_PHIX)] = rxi;
            b_b[(1, c + DOF_PHIY)] = ryi;
            b_b[(2, c + DOF_PHIX)] = ryi;
            b_b[(2, c + DOF_PHIY)] = rxi;
            b_s[(0, c + DOF_W)] = ryi;
            b_s[(0, c + DOF_PHIY)] = r;
            b_s[(1, c + DOF_W)] = rxi;
            b_s[(1, c + DOF_PHIX)] = r;
            g[(0, c + DOF_W)] = rxi;
            g[(1, c + DOF_W)] = ryi;
        }
        Ok(StrainOperators {
            control_points: cps,
            eps: kin.eps,
            kappa: kin.kappa,
            gamma: kin.gamma,
            b_m,
            b_nl,
            b_b,
            b_s,
            g,
        })
    }

    /// Internal force of one element for the given state, local ordering.
    pub fn element_internal_force(&self, state: &DisplacementState, element: usize) -> DVector<f64> {
        let elem = &self.elements[element];
        let nloc = elem.cps.len() * DOF_PER_CP;
        let mut f = DVector::zeros(nloc);
        self.element_force_into(elem, state, &mut f);
        f
    }

    fn element_force_into(&self, elem: &ElementTable, state: &DisplacementState, f: &mut DVector<f64>) {
        for qp in &elem.full {
            let kin = local_kinematics(qp, &elem.cps, state, &self.imperfection);
            let n = qp.section.a * kin.eps + qp.section.b * kin.kappa;
            let m = qp.section.b * kin.eps + qp.section.d * kin.kappa;
            let w = qp.weight;
            let [tx, ty] = kin.slope;
            for (i, _) in elem.cps.iter().enumerate() {
                let (rx, ry) = (qp.rx[i], qp.ry[i]);
                let base = i * DOF_PER_CP;
                f[base + DOF_U] += w * (rx * n[0] + ry * n[2]);
                f[base + DOF_V] += w * (ry * n[1] + rx * n[2]);
                f[base + DOF_W] +=
                    w * (tx * rx * n[0] + ty * ry * n[1] + (tx * ry + ty * rx) * n[2]);
                f[base + DOF_PHIX] += w * (rx * m[0] + ry * m[2]);
                f[base + DOF_PHIY] += w * (ry * m[1] + rx * m[2]);
            }
        }
        for qp in &elem.shear {
            let kin = local_kinematics(qp, &elem.cps, state, &self.imperfection);
            let q = qp.section.a_s * kin.gamma;
            let w = qp.weight;
            for (i, _) in elem.cps.iter().enumerate() {
                let (r, rx, ry) = (qp.r[i], qp.rx[i], qp.ry[i]);
                let base = i * DOF_PER_CP;
                f[base + DOF_W] += w * (ry * q[0] + rx * q[1]);
                f[base + DOF_PHIX] += w * r * q[1];
                f[base + DOF_PHIY] += w * r * q[0];
            }
        }
    }

    /// Consistent element tangent: material plus geometric parts.
    pub fn element_tangent(&self, state: &DisplacementState, element: usize) -> DMatrix<f64> {
        let elem = &self.elements[element];
        let nloc = elem.cps.len() * DOF_PER_CP;
        let mut k = DMatrix::zeros(nloc, nloc);
        self.element_tangent_into(elem, state, &mut k);
        k
    }

    fn element_tangent_into(&self, elem: &ElementTable, state: &DisplacementState, k: &mut DMatrix<f64>) {
        let nen = elem.cps.len();
        let nloc = nen * DOF_PER_CP;
        let mut bhat = DMatrix::zeros(6, nloc);
        let mut cb = DMatrix::zeros(6, nloc);
        let mut c66 = DMatrix::zeros(6, 6);
        for qp in &elem.full {
            let kin = local_kinematics(qp, &elem.cps, state, &self.imperfection);
            let n = qp.section.a * kin.eps + qp.section.b * kin.kappa;
            let [tx, ty] = kin.slope;

            bhat.fill(0.0);
            for i in 0..nen {
                let (rx, ry) = (qp.rx[i], qp.ry[i]);
                let c = i * DOF_PER_CP;
                // membrane rows (0..3) including the current-slope coupling
                bhat[(0, c + DOF_U)] = rx;
                bhat[(1, c + DOF_V)] = ry;
                bhat[(2, c + DOF_U)] = ry;
                bhat[(2, c + DOF_V)] = rx;
                bhat[(0, c + DOF_W)] = tx * rx;
                bhat[(1, c + DOF_W)] = ty * ry;
                bhat[(2, c + DOF_W)] = tx * ry + ty * rx;
                // bending rows (3..6)
                bhat[(3, c + DOF_PHIX)] = rx;
                bhat[(4, c + DOF_PHIY)] = ry;
                bhat[(5, c + DOF_PHIX)] = ry;
                bhat[(5, c + DOF_PHIY)] = rx;
            }

            for r in 0..3 {
                for s in 0..3 {
                    c66[(r, s)] = qp.section.a[(r, s)];
                    c66[(r, s + 3)] = qp.section.b[(r, s)];
                    c66[(r + 3, s)] = qp.section.b[(r, s)];
                    c66[(r + 3, s + 3)] = qp.section.d[(r, s)];
                }
            }

            cb.gemm(1.0, &c66, &bhat, 0.0);
            k.gemm_tr(qp.weight, &bhat, &cb, 1.0);

            // geometric part: grad(w)^T [N] grad(w)
            let w = qp.weight;
            for i in 0..nen {
                let (rxi, ryi) = (qp.rx[i], qp.ry[i]);
                let row = i * DOF_PER_CP + DOF_W;
                for j in 0..nen {
                    let (rxj, ryj) = (qp.rx[j], qp.ry[j]);
                    k[(row, j * DOF_PER_CP + DOF_W)] += w
                        * (rxi * (n[0] * rxj + n[2] * ryj) + ryi * (n[2] * rxj + n[1] * ryj));
                }
            }
        }

        let mut bs = DMatrix::zeros(2, nloc);
        let mut asbs = DMatrix::zeros(2, nloc);
        let mut as22 = DMatrix::zeros(2, 2);
        for qp in &elem.shear {
            bs.fill(0.0);
            for i in 0..nen {
                let (r, rx, ry) = (qp.r[i], qp.rx[i], qp.ry[i]);
                let c = i * DOF_PER_CP;
                bs[(0, c + DOF_W)] = ry;
                bs[(0, c + DOF_PHIY)] = r;
                bs[(1, c + DOF_W)] = rx;
                bs[(1, c + DOF_PHIX)] = r;
            }
            for r in 0..2 {
                for s in 0..2 {
                    as22[(r, s)] = qp.section.a_s[(r, s)];
                }
            }
            asbs.gemm(1.0, &as22, &bs, 0.0);
            k.gemm_tr(qp.weight, &bs, &asbs, 1.0);
        }
    }

    /// Global internal force and tangent stiffness, full (unreduced) size.
    pub fn assemble(&self, state: &DisplacementState) -> (DVector<f64>, DMatrix<f64>) {
        let ndof = self.n_dofs();
        let mut f = DVector::zeros(ndof);
        let mut k = DMatrix::zeros(ndof, ndof);
        let mut fe = DVector::zeros(0);
        let mut ke = DMatrix::zeros(0, 0);
        for elem in &self.elements {
            let nloc = elem.cps.len() * DOF_PER_CP;
            if fe.len() != nloc {
                fe = DVector::zeros(nloc);
                ke = DMatrix::zeros(nloc, nloc);
            } else {
                fe.fill(0.0);
                ke.fill(0.0);
            }
            self.element_force_into(elem, state, &mut fe);
            self.element_tangent_into(elem, state, &mut ke);
            for (i, &cpi) in elem.cps.iter().enumerate() {
                for di in 0..DOF_PER_CP {
                    let gi = cpi * DOF_PER_CP + di;
                    f[gi] += fe[i * DOF_PER_CP + di];
                    for (j, &cpj) in elem.cps.iter().enumerate() {
                        for dj in 0..DOF_PER_CP {
                            k[(gi, cpj * DOF_PER_CP + dj)] +=
                                ke[(i * DOF_PER_CP + di, j * DOF_PER_CP + dj)];
                        }
                    }
                }
            }
        }
        (f, k)
    }

    /// Global internal force only.
    pub fn internal_force(&self, state: &DisplacementState) -> DVector<f64> {
        let ndof = self.n_dofs();
        let mut f = DVector::zeros(ndof);
        let mut fe = DVector::zeros(0);
        for elem in &self.elements {
            let nloc = elem.cps.len() * DOF_PER_CP;
            if fe.len() != nloc {
                fe = DVector::zeros(nloc);
            } else {
                fe.fill(0.0);
            }
            self.element_force_into(elem, state, &mut fe);
            for (i, &cpi) in elem.cps.iter().enumerate() {
                for di in 0..DOF_PER_CP {
                    f[cpi * DOF_PER_CP + di] += fe[i * DOF_PER_CP + di];
                }
            }
        }
        f
    }

    /// Stress (geometric) stiffness of a prestress state: the membrane
    /// resultants are taken from the *linear* strains of `state`, as used by
    /// the buckling eigenproblem.
    pub fn geometric_stiffness(&self, state: &DisplacementState) -> DMatrix<f64> {
        let ndof = self.n_dofs();
        let mut kg = DMatrix::zeros(ndof, ndof);
        for elem in &self.elements {
            for qp in &elem.full {
                let mut ux = 0.0;
                let mut uy = 0.0;
                let mut vx = 0.0;
                let mut vy = 0.0;
                let mut phix_x = 0.0;
                let mut phix_y = 0.0;
                let mut phiy_x = 0.0;
                let mut phiy_y = 0.0;
                for (i, &cp) in elem.cps.iter().enumerate() {
                    let base = cp * DOF_PER_CP;
                    let (rx, ry) = (qp.rx[i], qp.ry[i]);
                    ux += rx * state[base + DOF_U];
                    uy += ry * state[base + DOF_U];
                    vx += rx * state[base + DOF_V];
                    vy += ry * state[base + DOF_V];
                    phix_x += rx * state[base + DOF_PHIX];
                    phix_y += ry * state[base + DOF_PHIX];
                    phiy_x += rx * state[base + DOF_PHIY];
                    phiy_y += ry * state[base + DOF_PHIY];
                }
                let eps = Vector3::new(ux, vy, uy + vx);
                let kappa = Vector3::new(phix_x, phiy_y, phix_y + phiy_x);
                let n = qp.section.a * eps + qp.section.b * kappa;
                let w = qp.weight;
                for (i, &cpi) in elem.cps.iter().enumerate() {
                    let (rxi, ryi) = (qp.rx[i], qp.ry[i]);
                    let row = cpi * DOF_PER_CP + DOF_W;
                    for (j, &cpj) in elem.cps.iter().enumerate() {
                        let (rxj, ryj) = (qp.rx[j], qp.ry[j]);
                        kg[(row, cpj * DOF_PER_CP + DOF_W)] += w
                            * (rxi * (n[0] * rxj + n[2] * ryj) + ryi * (n[2] * rxj + n[1] * ryj));
                    }
                }
            }
        }
        kg
    }

    /// Discrete strain energy with the same split quadrature as the
    /// internal force, so the force is its exact gradient.
    pub fn strain_energy(&self, state: &DisplacementState) -> f64 {
        let mut u = 0.0;
        for elem in &self.elements {
            for qp in &elem.full {
                let kin = local_kinematics(qp, &elem.cps, state, &self.imperfection);
                let n = qp.section.a * kin.eps + qp.section.b * kin.kappa;
                let m = qp.section.b * kin.eps + qp.section.d * kin.kappa;
                u += 0.5 * qp.weight * (kin.eps.dot(&n) + kin.kappa.dot(&m));
            }
            for qp in &elem.shear {
                let kin = local_kinematics(qp, &elem.cps, state, &self.imperfection);
                let q = qp.section.a_s * kin.gamma;
                u += 0.5 * qp.weight * kin.gamma.dot(&q);
            }
        }
        u
    }
}
