//! Plate model on a NURBS patch: degree-of-freedom layout, boundary
//! constraints, load vectors, imperfection seeding and the per-element
//! quadrature tables consumed by assembly.
//!
//! Each control point carries five unknowns `(u, v, w, phi_x, phi_y)`.
//! Edges are labelled by the corner convention `A = (-a/2, +a/2)`,
//! `B = (+a/2, +a/2)`, `C = (+a/2, -a/2)`, `D = (-a/2, -a/2)`, so AD is the
//! edge x = -a/2, BC is x = +a/2, AB is y = +a/2 and CD is y = -a/2.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::DVector;

use crate::laminate::{section_stiffness, Layup, SectionStiffness};
use crate::nurbs::{ParamPoint, Patch2D};
use crate::quadrature::{gauss_rule, map_to_interval};
use crate::thickness::ThicknessField;
use crate::{Error, Result};

/// Generalized displacements of all control points, 5 per control point.
pub type DisplacementState = DVector<f64>;

pub const DOF_PER_CP: usize = 5;
pub const DOF_U: usize = 0;
pub const DOF_V: usize = 1;
pub const DOF_W: usize = 2;
pub const DOF_PHIX: usize = 3;
pub const DOF_PHIY: usize = 4;

/// Plate edge labels (see the module docs for the corner convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Ad,
    Bc,
    Ab,
    Cd,
}

impl Edge {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "AD" | "ad" | "DA" | "da" => Ok(Edge::Ad),
            "BC" | "bc" | "CB" | "cb" => Ok(Edge::Bc),
            "AB" | "ab" | "BA" | "ba" => Ok(Edge::Ab),
            "CD" | "cd" | "DC" | "dc" => Ok(Edge::Cd),
            other => Err(Error::UnknownEdge(other.to_string())),
        }
    }
}

/// Supported essential boundary-condition families.
///
/// `SimplySupported1` fixes `w` plus the rotation conjugate to the edge
/// direction (`phi_y` on x-normal edges, `phi_x` on y-normal edges);
/// `SimplySupported2` fixes the in-plane displacements and `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcKind {
    Clamped,
    SimplySupported1,
    SimplySupported2,
}

/// Reference loading: uniform pressure and/or compressive edge resultants.
///
/// `nx` acts on the x-normal edges AD/BC, `ny` on the y-normal edges AB/CD;
/// positive values compress the plate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LoadCase {
    pub pressure: f64,
    pub nx: f64,
    pub ny: f64,
}

/// Quadrature scheme for the transverse shear terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearRule {
    /// `p x q` points: the standard choice that avoids shear locking.
    Reduced,
    /// Same `(p+1) x (q+1)` rule as membrane and bending.
    Full,
}

/// Precomputed data at one quadrature point.
pub(crate) struct QuadPoint {
    pub r: Vec<f64>,
    pub rx: Vec<f64>,
    pub ry: Vec<f64>,
    /// Gauss weight times span scaling times Jacobian determinant.
    pub weight: f64,
    pub section: SectionStiffness,
}

pub(crate) struct ElementTable {
    pub cps: Vec<usize>,
    pub full: Vec<QuadPoint>,
    pub shear: Vec<QuadPoint>,
}

/// FSDT plate on a NURBS patch with position-dependent section stiffness.
pub struct PlateModel {
    pub(crate) patch: Patch2D,
    pub(crate) thickness: ThicknessField,
    pub(crate) layup: Layup,
    pub(crate) ks: f64,
    pub(crate) load: LoadCase,
    /// Transverse imperfection coefficients, one per control point.
    pub(crate) imperfection: Vec<f64>,
    pub(crate) constrained: Vec<bool>,
    pub(crate) elements: Vec<ElementTable>,
}

impl PlateModel {
    /// Builds the model and precomputes basis values, physical gradients and
    /// section stiffness at every quadrature point.
    pub fn new(
        patch: Patch2D,
        thickness: ThicknessField,
        layup: Layup,
        ks: f64,
        load: LoadCase,
        shear_rule: ShearRule,
    ) -> Result<Self> {
        let p = patch.knots_xi().degree();
        let q = patch.knots_eta().degree();
        let full_rule = (p + 1, q + 1);
        let shear_pts = match shear_rule {
            ShearRule::Reduced => (p.max(1), q.max(1)),
            ShearRule::Full => full_rule,
        };

        let mut elements = Vec::new();
        for span in patch.elements() {
            let cps = patch.active_control_points(span.span_xi, span.span_eta);
            let full = Self::quad_table(&patch, &thickness, &layup, ks, &span, full_rule)?;
            let shear = Self::quad_table(&patch, &thickness, &layup, ks, &span, shear_pts)?;
            elements.push(ElementTable { cps, full, shear });
        }

        let nc = patch.control_point_count();
        Ok(Self {
            patch,
            thickness,
            layup,
            ks,
            load,
            imperfection: vec![0.0; nc],
            constrained: vec![false; nc * DOF_PER_CP],
            elements,
        })
    }

    fn quad_table(
        patch: &Patch2D,
        thickness: &ThicknessField,
        layup: &Layup,
        ks: f64,
        span: &crate::nurbs::ElementSpan,
        rule: (usize, usize),
    ) -> Result<Vec<QuadPoint>> {
        let mut out = Vec::with_capacity(rule.0 * rule.1);
        for &gy in gauss_rule(rule.1) {
            let (eta, wy) = map_to_interval(gy, span.eta_range.0, span.eta_range.1);
            for &gx in gauss_rule(rule.0) {
                let (xi, wx) = map_to_interval(gx, span.xi_range.0, span.xi_range.1);
                let pt = ParamPoint::new(xi, eta);
                let basis = patch.rational_basis_2d(pt)?;
                let (_, jac) = patch.surface_point(pt)?;
                let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
                if !(det > 0.0) {
                    return Err(Error::DegenerateGeometry { det });
                }
                // physical gradients via the inverse Jacobian transpose
                let nen = basis.values.len();
                let mut rx = vec![0.0; nen];
                let mut ry = vec![0.0; nen];
                for i in 0..nen {
                    rx[i] = (jac[1][1] * basis.d_xi[i] - jac[1][0] * basis.d_eta[i]) / det;
                    ry[i] = (-jac[0][1] * basis.d_xi[i] + jac[0][0] * basis.d_eta[i]) / det;
                }
                let ifc = thickness.interfaces_at(patch, pt)?;
                let section = section_stiffness(layup, &ifc.z, ks)?;
                out.push(QuadPoint {
                    r: basis.values,
                    rx,
                    ry,
                    weight: wx * wy * det,
                    section,
                });
            }
        }
        Ok(out)
    }

    pub fn patch(&self) -> &Patch2D {
        &self.patch
    }

    pub fn thickness(&self) -> &ThicknessField {
        &self.thickness
    }

    pub fn load(&self) -> LoadCase {
        self.load
    }

    pub fn n_control_points(&self) -> usize {
        self.patch.control_point_count()
    }

    pub fn n_dofs(&self) -> usize {
        self.n_control_points() * DOF_PER_CP
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn zero_state(&self) -> DisplacementState {
        DVector::zeros(self.n_dofs())
    }

    /// Control points whose basis functions are interpolatory on an edge:
    /// the first/last row or column of the net.
    pub fn edge_control_points(&self, edge: Edge) -> Vec<usize> {
        let (n, m) = self.patch.dims();
        match edge {
            Edge::Ad => (0..m).map(|j| j * n).collect(),
            Edge::Bc => (0..m).map(|j| j * n + n - 1).collect(),
            Edge::Ab => (0..n).map(|i| (m - 1) * n + i).collect(),
            Edge::Cd => (0..n).collect(),
        }
    }

    /// Constrains the listed edges with the given condition kind.
    pub fn apply_bc(&mut self, kind: BcKind, edges: &[Edge]) {
        for &edge in edges {
            let dofs: &[usize] = match kind {
                BcKind::Clamped => &[DOF_U, DOF_V, DOF_W, DOF_PHIX, DOF_PHIY],
                BcKind::SimplySupported1 => match edge {
                    Edge::Ad | Edge::Bc => &[DOF_W, DOF_PHIY],
                    Edge::Ab | Edge::Cd => &[DOF_W, DOF_PHIX],
                },
                BcKind::SimplySupported2 => &[DOF_U, DOF_V, DOF_W],
            };
            for cp in self.edge_control_points(edge) {
                for &d in dofs {
                    self.constrained[cp * DOF_PER_CP + d] = true;
                }
            }
        }
    }

    /// Pins three in-plane dofs to remove the membrane rigid-body modes when
    /// no edge constrains `u` or `v` (self-balanced edge loads): `u = v = 0`
    /// at the control point nearest the plate center and `v = 0` at the one
    /// nearest the midpoint of edge BC. The loads being self-equilibrated,
    /// the membrane stress state is unaffected.
    pub fn pin_in_plane_rigid_modes(&mut self) -> Result<()> {
        let center = self.nearest_control_point(ParamPoint::new(0.5, 0.5))?;
        let edge_mid = self.nearest_control_point(ParamPoint::new(1.0, 0.5))?;
        self.constrained[center * DOF_PER_CP + DOF_U] = true;
        self.constrained[center * DOF_PER_CP + DOF_V] = true;
        self.constrained[edge_mid * DOF_PER_CP + DOF_V] = true;
        Ok(())
    }

    fn nearest_control_point(&self, at: ParamPoint) -> Result<usize> {
        let (target, _) = self.patch.surface_point(at)?;
        let gx = self.patch.knots_xi().greville_abscissae();
        let gy = self.patch.knots_eta().greville_abscissae();
        let n = gx.len();
        let mut best = (0usize, f64::INFINITY);
        for (j, &eta) in gy.iter().enumerate() {
            for (i, &xi) in gx.iter().enumerate() {
                let (xy, _) = self.patch.surface_point(ParamPoint::new(xi, eta))?;
                let d2 = (xy[0] - target[0]).powi(2) + (xy[1] - target[1]).powi(2);
                if d2 < best.1 {
                    best = (j * n + i, d2);
                }
            }
        }
        Ok(best.0)
    }

    pub fn is_constrained(&self, dof: usize) -> bool {
        self.constrained[dof]
    }

    pub fn n_constrained(&self) -> usize {
        self.constrained.iter().filter(|&&c| c).count()
    }

    /// Indices of the unconstrained dofs, ascending.
    pub fn free_dofs(&self) -> Vec<usize> {
        (0..self.n_dofs()).filter(|&d| !self.constrained[d]).collect()
    }

    pub fn reduce_vector(&self, full: &DVector<f64>, free: &[usize]) -> DVector<f64> {
        DVector::from_iterator(free.len(), free.iter().map(|&d| full[d]))
    }

    pub fn expand_vector(&self, reduced: &DVector<f64>, free: &[usize]) -> DVector<f64> {
        let mut full = DVector::zeros(self.n_dofs());
        for (i, &d) in free.iter().enumerate() {
            full[d] = reduced[i];
        }
        full
    }

    pub fn reduce_matrix(
        &self,
        full: &nalgebra::DMatrix<f64>,
        free: &[usize],
    ) -> nalgebra::DMatrix<f64> {
        let nf = free.len();
        let mut out = nalgebra::DMatrix::zeros(nf, nf);
        for (i, &di) in free.iter().enumerate() {
            for (j, &dj) in free.iter().enumerate() {
                out[(i, j)] = full[(di, dj)];
            }
        }
        out
    }

    /// Shapes the imperfection field after a buckling mode: the transverse
    /// components of `mode` are scaled so the largest coefficient equals
    /// `delta * side`.
    pub fn seed_imperfection(
        &mut self,
        mode: &DisplacementState,
        delta: f64,
        side: f64,
    ) -> Result<()> {
        assert_eq!(mode.len(), self.n_dofs());
        let nc = self.n_control_points();
        let mut max_w = 0.0f64;
        for c in 0..nc {
            max_w = max_w.max(mode[c * DOF_PER_CP + DOF_W].abs());
        }
        if max_w == 0.0 {
            return Err(Error::ZeroMode);
        }
        let scale = delta * side / max_w;
        for c in 0..nc {
            self.imperfection[c] = scale * mode[c * DOF_PER_CP + DOF_W];
        }
        Ok(())
    }

    pub fn imperfection_coefficients(&self) -> &[f64] {
        &self.imperfection
    }

    /// Consistent reference load vector for the stored load case.
    pub fn load_vector(&self) -> Result<DVector<f64>> {
        let mut f = DVector::zeros(self.n_dofs());
        if self.load.pressure != 0.0 {
            for elem in &self.elements {
                for qp in &elem.full {
                    for (idx, &cp) in elem.cps.iter().enumerate() {
                        f[cp * DOF_PER_CP + DOF_W] += qp.weight * self.load.pressure * qp.r[idx];
                    }
                }
            }
        }
        if self.load.nx != 0.0 {
            // compression: traction +x on AD (outward normal -x), -x on BC
            self.add_edge_load(&mut f, Edge::Ad, DOF_U, self.load.nx)?;
            self.add_edge_load(&mut f, Edge::Bc, DOF_U, -self.load.nx)?;
        }
        if self.load.ny != 0.0 {
            self.add_edge_load(&mut f, Edge::Cd, DOF_V, self.load.ny)?;
            self.add_edge_load(&mut f, Edge::Ab, DOF_V, -self.load.ny)?;
        }
        Ok(f)
    }

    fn add_edge_load(
        &self,
        f: &mut DVector<f64>,
        edge: Edge,
        dof: usize,
        value: f64,
    ) -> Result<()> {
        // line integral of the basis along the edge, consistent lumping
        let (along_xi, fixed) = match edge {
            Edge::Ad => (false, 0.0),
            Edge::Bc => (false, 1.0),
            Edge::Cd => (true, 0.0),
            Edge::Ab => (true, 1.0),
        };
        let kv = if along_xi { self.patch.knots_xi() } else { self.patch.knots_eta() };
        let rule = gauss_rule(kv.degree() + 1);
        for (_, s0, s1) in kv.nonzero_spans() {
            for &g in rule {
                let (s, w) = map_to_interval(g, s0, s1);
                let pt = if along_xi {
                    ParamPoint::new(s, fixed)
                } else {
                    ParamPoint::new(fixed, s)
                };
                let basis = self.patch.rational_basis_2d(pt)?;
                let cps = self.patch.active_control_points(basis.span_xi, basis.span_eta);
                let (_, jac) = self.patch.surface_point(pt)?;
                // arc length of the running parameter direction
                let ds = if along_xi {
                    (jac[0][0] * jac[0][0] + jac[1][0] * jac[1][0]).sqrt()
                } else {
                    (jac[0][1] * jac[0][1] + jac[1][1] * jac[1][1]).sqrt()
                };
                for (idx, &cp) in cps.iter().enumerate() {
                    f[cp * DOF_PER_CP + dof] += w * ds * value * basis.values[idx];
                }
            }
        }
        Ok(())
    }

    /// All five generalized displacements at a parameter point.
    pub fn displacement_at(&self, state: &DisplacementState, pt: ParamPoint) -> Result<[f64; 5]> {
        let basis = self.patch.rational_basis_2d(pt)?;
        let cps = self.patch.active_control_points(basis.span_xi, basis.span_eta);
        let mut out = [0.0; 5];
        for (idx, &cp) in cps.iter().enumerate() {
            for d in 0..DOF_PER_CP {
                out[d] += basis.values[idx] * state[cp * DOF_PER_CP + d];
            }
        }
        Ok(out)
    }

    /// Transverse deflection at a parameter point.
    pub fn deflection_at(&self, state: &DisplacementState, pt: ParamPoint) -> Result<f64> {
        Ok(self.displacement_at(state, pt)?[DOF_W])
    }

    /// Evaluated imperfection field at a parameter point.
    pub fn imperfection_at(&self, pt: ParamPoint) -> Result<f64> {
        let basis = self.patch.rational_basis_2d(pt)?;
        let cps = self.patch.active_control_points(basis.span_xi, basis.span_eta);
        Ok(cps
            .iter()
            .enumerate()
            .map(|(idx, &cp)| basis.values[idx] * self.imperfection[cp])
            .sum())
    }
}
