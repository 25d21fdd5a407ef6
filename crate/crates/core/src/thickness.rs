//! Per-lamina thickness represented as a NURBS field over the patch, the
//! analytic builders for the benchmark geometry families, and interface
//! coordinates through the thickness at any in-plane point.
//!
//! Control thickness parameters live on the same control net as the
//! displacement field: one parameter per control point and lamina. Fields
//! are fitted by collocation at the Greville abscissae, which reproduces
//! constant and linear profiles exactly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::{DMatrix, DVector};

use crate::nurbs::{ParamPoint, Patch2D};
use crate::quadrature::{gauss_rule, map_to_interval};
use crate::{Error, Result};

/// Per-lamina control thickness parameters over a patch's control net.
#[derive(Debug, Clone)]
pub struct ThicknessField {
    dims: (usize, usize),
    grids: Vec<Vec<f64>>, // one grid per lamina, control-net ordering
}

/// Through-thickness interface coordinates at one in-plane point,
/// midplane at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceCoords {
    pub z: Vec<f64>,
}

impl InterfaceCoords {
    pub fn total_thickness(&self) -> f64 {
        self.z[self.z.len() - 1] - self.z[0]
    }
}

impl ThicknessField {
    /// Uniform plate: every lamina gets `total / n_laminae` everywhere.
    pub fn uniform(patch: &Patch2D, total: f64, n_laminae: usize) -> Result<Self> {
        if !(total > 0.0) {
            return Err(Error::Parameter(format!("total thickness {total} must be positive")));
        }
        let nc = patch.control_point_count();
        let per = total / n_laminae as f64;
        Ok(Self {
            dims: patch.dims(),
            grids: vec![vec![per; nc]; n_laminae],
        })
    }

    /// Builds a field from explicit per-lamina control grids.
    pub fn from_control_grids(patch: &Patch2D, grids: Vec<Vec<f64>>) -> Result<Self> {
        if grids.is_empty() {
            return Err(Error::Geometry("at least one lamina grid required".into()));
        }
        let nc = patch.control_point_count();
        for (k, g) in grids.iter().enumerate() {
            if g.len() != nc {
                return Err(Error::Geometry(format!(
                    "lamina {k} grid has {} entries, control net has {nc}",
                    g.len()
                )));
            }
            if g.iter().any(|&v| !(v > 0.0)) {
                return Err(Error::Geometry(format!("lamina {k} has non-positive control parameters")));
            }
        }
        Ok(Self { dims: patch.dims(), grids })
    }

    /// Fits control parameters so the total-thickness field interpolates
    /// `analytic(x, y)` at the Greville points, then splits the total evenly
    /// across `n_laminae` equal plies.
    pub fn fit<F>(patch: &Patch2D, analytic: F, n_laminae: usize) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64,
    {
        assert!(n_laminae >= 1);
        let (n, m) = patch.dims();
        let nc = n * m;
        let gx = patch.knots_xi().greville_abscissae();
        let gy = patch.knots_eta().greville_abscissae();

        let mut coll = DMatrix::zeros(nc, nc);
        let mut rhs = DVector::zeros(nc);
        for (j, &eta) in gy.iter().enumerate() {
            for (i, &xi) in gx.iter().enumerate() {
                let row = j * n + i;
                let pt = ParamPoint::new(xi, eta);
                let basis = patch.rational_basis_2d(pt)?;
                let cps = patch.active_control_points(basis.span_xi, basis.span_eta);
                for (idx, &c) in cps.iter().enumerate() {
                    coll[(row, c)] = basis.values[idx];
                }
                let (xy, _) = patch.surface_point(pt)?;
                let h = analytic(xy[0], xy[1]);
                if !(h > 0.0) {
                    return Err(Error::Parameter(format!(
                        "analytic thickness {h} at ({}, {}) is not positive",
                        xy[0], xy[1]
                    )));
                }
                rhs[row] = h;
            }
        }

        let lu = coll.lu();
        let total = lu
            .solve(&rhs)
            .ok_or_else(|| Error::Fitting("singular Greville collocation system".into()))?;
        if total.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::Fitting("fitted control parameters are not all positive".into()));
        }

        let per: Vec<f64> = total.iter().map(|&v| v / n_laminae as f64).collect();
        Ok(Self {
            dims: patch.dims(),
            grids: vec![per; n_laminae],
        })
    }

    pub fn lamina_count(&self) -> usize {
        self.grids.len()
    }

    pub fn control_grid(&self, k: usize) -> &[f64] {
        &self.grids[k]
    }

    fn check_patch(&self, patch: &Patch2D) {
        assert_eq!(self.dims, patch.dims(), "thickness field fitted on a different patch");
    }

    /// Thickness of lamina `k` at a parameter point.
    pub fn eval_lamina(&self, patch: &Patch2D, pt: ParamPoint, k: usize) -> Result<f64> {
        self.check_patch(patch);
        if k >= self.grids.len() {
            return Err(Error::LaminaIndex { index: k, count: self.grids.len() });
        }
        let basis = patch.rational_basis_2d(pt)?;
        let cps = patch.active_control_points(basis.span_xi, basis.span_eta);
        Ok(cps
            .iter()
            .enumerate()
            .map(|(idx, &c)| basis.values[idx] * self.grids[k][c])
            .sum())
    }

    /// Total laminate thickness at a parameter point.
    pub fn total(&self, patch: &Patch2D, pt: ParamPoint) -> Result<f64> {
        self.check_patch(patch);
        let basis = patch.rational_basis_2d(pt)?;
        let cps = patch.active_control_points(basis.span_xi, basis.span_eta);
        let mut h = 0.0;
        for (idx, &c) in cps.iter().enumerate() {
            let stacked: f64 = self.grids.iter().map(|g| g[c]).sum();
            h += basis.values[idx] * stacked;
        }
        Ok(h)
    }

    /// Interface coordinates at a parameter point: laminae stacked bottom-up
    /// and centered on the midplane.
    pub fn interfaces_at(&self, patch: &Patch2D, pt: ParamPoint) -> Result<InterfaceCoords> {
        self.check_patch(patch);
        let mut per = Vec::with_capacity(self.grids.len());
        for k in 0..self.grids.len() {
            let h = self.eval_lamina(patch, pt, k)?;
            if !(h > 0.0) {
                return Err(Error::Geometry(format!("lamina {k} thickness {h} at evaluation point")));
            }
            per.push(h);
        }
        let total: f64 = per.iter().sum();
        let mut z = Vec::with_capacity(per.len() + 1);
        let mut zk = -0.5 * total;
        z.push(zk);
        for h in per {
            zk += h;
            z.push(zk);
        }
        // pin the top interface to h/2 exactly
        let last = z.len() - 1;
        z[last] = 0.5 * total;
        Ok(InterfaceCoords { z })
    }

    /// Plate volume of the evaluated field, by element-wise Gauss quadrature.
    pub fn volume(&self, patch: &Patch2D) -> Result<f64> {
        self.check_patch(patch);
        let p = patch.knots_xi().degree();
        let q = patch.knots_eta().degree();
        let rx = gauss_rule(p + 1);
        let ry = gauss_rule(q + 1);
        let mut vol = 0.0;
        for elem in patch.elements() {
            for &gy in ry {
                let (eta, wy) = map_to_interval(gy, elem.eta_range.0, elem.eta_range.1);
                for &gx in rx {
                    let (xi, wx) = map_to_interval(gx, elem.xi_range.0, elem.xi_range.1);
                    let pt = ParamPoint::new(xi, eta);
                    let (_, jac) = patch.surface_point(pt)?;
                    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
                    vol += self.total(patch, pt)? * det * wx * wy;
                }
            }
        }
        Ok(vol)
    }
}

/// Linear taper along x: `h(x) = h_bar - 2 alpha x` on a plate of side `a`
/// centered at the origin. Requires `alpha * a < h_bar`.
pub fn tapered_x(a: f64, h_bar: f64, alpha: f64) -> Result<impl Fn(f64, f64) -> f64> {
    if !(alpha >= 0.0 && alpha * a < h_bar) {
        return Err(Error::Parameter(format!(
            "tapered_x needs 0 <= alpha < h_bar/a = {}, got {alpha}",
            h_bar / a
        )));
    }
    Ok(move |x: f64, _y: f64| h_bar - 2.0 * alpha * x)
}

/// Linear taper along the plate diagonal:
/// `h(x, y) = h_bar - sqrt(2) alpha (x - y)`. Requires `sqrt(2) alpha a < h_bar`.
pub fn tapered_diagonal(a: f64, h_bar: f64, alpha: f64) -> Result<impl Fn(f64, f64) -> f64> {
    let root2 = core::f64::consts::SQRT_2;
    if !(alpha >= 0.0 && root2 * alpha * a < h_bar) {
        return Err(Error::Parameter(format!(
            "tapered_diagonal needs 0 <= alpha < h_bar/(sqrt(2) a) = {}, got {alpha}",
            h_bar / (root2 * a)
        )));
    }
    Ok(move |x: f64, y: f64| h_bar - root2 * alpha * x + root2 * alpha * y)
}

/// Thickness oscillating as a cosine along x with `waves` full wavelengths
/// over the side, crest on the edge x = -a/2:
/// `h(x) = h_bar (1 + 2 alpha cos(2 pi waves (x + a/2) / a))`.
/// Odd wave counts therefore put a trough at the plate center.
/// Requires `alpha < 0.5`.
pub fn sine_wave(a: f64, h_bar: f64, alpha: f64, waves: u32) -> Result<impl Fn(f64, f64) -> f64> {
    if !(0.0..0.5).contains(&alpha) {
        return Err(Error::Parameter(format!("sine_wave needs 0 <= alpha < 0.5, got {alpha}")));
    }
    if waves == 0 {
        return Err(Error::Parameter("sine_wave needs at least one wavelength".into()));
    }
    let omega = 2.0 * core::f64::consts::PI * waves as f64 / a;
    Ok(move |x: f64, _y: f64| h_bar * (1.0 + 2.0 * alpha * (omega * (x + 0.5 * a)).cos()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn patch(n_elems: usize) -> Patch2D {
        Patch2D::rectangle(-5.0, 5.0, -5.0, 5.0, n_elems, 2)
    }

    #[test]
    fn uniform_field_is_constant() {
        let patch = patch(3);
        let field = ThicknessField::uniform(&patch, 0.2, 4).unwrap();
        for &(xi, eta) in &[(0.0, 0.0), (0.33, 0.7), (1.0, 1.0)] {
            let pt = ParamPoint::new(xi, eta);
            assert_relative_eq!(field.total(&patch, pt).unwrap(), 0.2, max_relative = 1e-14);
            assert_relative_eq!(field.eval_lamina(&patch, pt, 2).unwrap(), 0.05, max_relative = 1e-14);
        }
    }

    #[test]
    fn total_equals_sum_of_laminae() {
        let patch = patch(4);
        let f = tapered_x(10.0, 0.2, 0.01).unwrap();
        let field = ThicknessField::fit(&patch, f, 4).unwrap();
        for k in 0..50 {
            let pt = ParamPoint::new((k as f64 * 0.618) % 1.0, (k as f64 * 0.382) % 1.0);
            let total = field.total(&patch, pt).unwrap();
            let summed: f64 = (0..4)
                .map(|l| field.eval_lamina(&patch, pt, l).unwrap())
                .sum();
            assert_relative_eq!(total, summed, epsilon = 1e-13);
        }
    }

    #[test]
    fn linear_taper_reproduced_exactly() {
        let patch = patch(6);
        let a = 10.0;
        let f = tapered_x(a, 0.2, 0.01).unwrap();
        let field = ThicknessField::fit(&patch, f, 1).unwrap();
        for k in 0..30 {
            let pt = ParamPoint::new(k as f64 / 29.0, ((7 * k) % 30) as f64 / 29.0);
            let (xy, _) = patch.surface_point(pt).unwrap();
            let expect = 0.2 - 2.0 * 0.01 * xy[0];
            assert_relative_eq!(field.total(&patch, pt).unwrap(), expect, max_relative = 1e-12);
        }
        // endpoint values of the taper
        let left = patch.param_from_xy(-5.0, 0.0).unwrap();
        let right = patch.param_from_xy(5.0, 0.0).unwrap();
        assert_relative_eq!(field.total(&patch, left).unwrap(), 0.3, max_relative = 1e-12);
        assert_relative_eq!(field.total(&patch, right).unwrap(), 0.1, max_relative = 1e-12);
    }

    #[test]
    fn corner_value_equals_corner_parameter() {
        let patch = patch(5);
        let f = tapered_diagonal(10.0, 0.2, 0.005).unwrap();
        let field = ThicknessField::fit(&patch, f, 1).unwrap();
        let corner = field.total(&patch, ParamPoint::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(corner, field.control_grid(0)[0], max_relative = 1e-13);
    }

    #[test]
    fn diagonal_taper_geometry() {
        let a = 10.0;
        let alpha = 0.01;
        let f = tapered_diagonal(a, 0.2, alpha).unwrap();
        let root2 = core::f64::consts::SQRT_2;
        assert_relative_eq!(f(-a / 2.0, a / 2.0), 0.2 + root2 * alpha * a, max_relative = 1e-14);
        for t in [-4.0, 0.0, 3.5] {
            assert_relative_eq!(f(t, t), 0.2, max_relative = 1e-14);
        }
    }

    #[test]
    fn sine_wave_profile() {
        // even wave counts peak at the center, odd ones dip there
        let f2 = sine_wave(10.0, 0.5, 0.1, 2).unwrap();
        assert_relative_eq!(f2(0.0, 0.0), 0.6, max_relative = 1e-12);
        let f1 = sine_wave(10.0, 0.5, 0.1, 1).unwrap();
        assert_relative_eq!(f1(0.0, 0.0), 0.4, max_relative = 1e-12);
        assert_relative_eq!(f1(-5.0, 0.0), 0.6, max_relative = 1e-12);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..=1000 {
            let h = f1(-5.0 + 10.0 * k as f64 / 1000.0, 0.0);
            lo = lo.min(h);
            hi = hi.max(h);
        }
        assert_relative_eq!(lo, 0.4, max_relative = 1e-6);
        assert_relative_eq!(hi, 0.6, max_relative = 1e-6);
    }

    #[test]
    fn lamina_index_out_of_range() {
        let patch = patch(2);
        let field = ThicknessField::uniform(&patch, 0.2, 4).unwrap();
        match field.eval_lamina(&patch, ParamPoint::new(0.5, 0.5), 4) {
            Err(crate::Error::LaminaIndex { index: 4, count: 4 }) => {}
            other => panic!("expected lamina index error, got {other:?}"),
        }
    }

    #[test]
    fn builders_reject_nonpositive_thickness() {
        assert!(tapered_x(10.0, 0.2, 0.05).is_err());
        assert!(tapered_diagonal(10.0, 0.2, 0.02).is_err());
        assert!(sine_wave(10.0, 0.5, 0.6, 1).is_err());
        assert!(sine_wave(10.0, 0.5, 0.1, 0).is_err());
    }

    #[test]
    fn interfaces_stack_symmetric_plies() {
        let patch = patch(3);
        let field = ThicknessField::uniform(&patch, 0.2, 4).unwrap();
        let ifc = field.interfaces_at(&patch, ParamPoint::new(0.4, 0.9)).unwrap();
        let expect = [-0.1, -0.05, 0.0, 0.05, 0.1];
        for (z, e) in ifc.z.iter().zip(expect) {
            assert_relative_eq!(*z, e, epsilon = 1e-15);
        }
        // symmetry: z_k = -z_{n+2-k}
        let n = ifc.z.len();
        for k in 0..n {
            assert_relative_eq!(ifc.z[k], -ifc.z[n - 1 - k], epsilon = 1e-15);
        }

        let single = ThicknessField::uniform(&patch, 0.3, 1).unwrap();
        let ifc = single.interfaces_at(&patch, ParamPoint::new(0.0, 0.0)).unwrap();
        assert_eq!(ifc.z, vec![-0.15, 0.15]);
    }

    #[test]
    fn volume_preserved_by_all_builders() {
        let a = 10.0;
        let h_bar = 0.2;
        let nominal = a * a * h_bar;

        let patch6 = patch(6);
        for alpha in [0.0, 0.005, 0.01, 0.015] {
            let f = tapered_x(a, h_bar, alpha).unwrap();
            let field = ThicknessField::fit(&patch6, f, 1).unwrap();
            assert_relative_eq!(field.volume(&patch6).unwrap(), nominal, max_relative = 1e-12);
        }
        // diagonal taper admits alpha < h_bar / (sqrt(2) a)
        for alpha in [0.0, 0.005, 0.01] {
            let f = tapered_diagonal(a, h_bar, alpha).unwrap();
            let field = ThicknessField::fit(&patch6, f, 4).unwrap();
            assert_relative_eq!(field.volume(&patch6).unwrap(), nominal, max_relative = 1e-12);
        }

        let patch12 = patch(12);
        for waves in [1u32, 2] {
            let f = sine_wave(a, 0.5, 0.1, waves).unwrap();
            let field = ThicknessField::fit(&patch12, f, 1).unwrap();
            assert_relative_eq!(field.volume(&patch12).unwrap(), a * a * 0.5, max_relative = 1e-3);
        }
    }

    #[test]
    fn sine_fit_interpolation_error_small() {
        let patch12 = patch(12);
        let a = 10.0;
        let f = sine_wave(a, 0.5, 0.1, 1).unwrap();
        let field = ThicknessField::fit(&patch12, &f, 1).unwrap();
        let mut max_rel: f64 = 0.0;
        for j in 0..100 {
            for i in 0..100 {
                let pt = ParamPoint::new(i as f64 / 99.0, j as f64 / 99.0);
                let (xy, _) = patch12.surface_point(pt).unwrap();
                let exact = f(xy[0], xy[1]);
                let got = field.total(&patch12, pt).unwrap();
                max_rel = max_rel.max(((got - exact) / exact).abs());
            }
        }
        assert!(max_rel < 1e-2, "max relative interpolation error {max_rel}");
    }

    #[test]
    fn smooth_field_has_continuous_gradient_across_knot_lines() {
        // quadratic field is C1: one-sided parametric derivatives agree
        let patch6 = patch(6);
        let f = sine_wave(10.0, 0.5, 0.1, 1).unwrap();
        let field = ThicknessField::fit(&patch6, f, 1).unwrap();
        let step = 1e-9;
        for knot in [1.0 / 6.0, 0.5, 5.0 / 6.0] {
            let d = |xi: f64| {
                let h = 1e-7;
                let a = field.total(&patch6, ParamPoint::new(xi - h, 0.41)).unwrap();
                let b = field.total(&patch6, ParamPoint::new(xi + h, 0.41)).unwrap();
                (b - a) / (2.0 * h)
            };
            let left = d(knot - step - 1e-7);
            let right = d(knot + step + 1e-7);
            assert!((left - right).abs() < 1e-6, "gradient jump {} at {knot}", left - right);
        }
    }

    #[test]
    fn constant_fit_recovers_constant_parameters() {
        let patch = patch(4);
        let field = ThicknessField::fit(&patch, |_, _| 0.37, 1).unwrap();
        for &v in field.control_grid(0) {
            assert_relative_eq!(v, 0.37, max_relative = 1e-12);
        }
    }
}
