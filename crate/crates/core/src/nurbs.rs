//! B-spline/NURBS basis evaluation and the tensor-product surface mapping
//! from the parameter square to the physical plate domain.
//!
//! Evaluation is local: every routine returns only the `degree + 1` basis
//! functions that are nonzero on the span containing the query point,
//! together with the span index, as needed for element assembly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Open knot vector with an associated polynomial degree.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    knots: Vec<f64>,
    degree: usize,
}

impl KnotVector {
    /// Builds a knot vector, checking openness and monotonicity.
    pub fn new(knots: Vec<f64>, degree: usize) -> Result<Self> {
        if knots.len() < 2 * (degree + 1) {
            return Err(Error::InvalidPatch(format!(
                "knot vector needs at least {} entries for degree {}, got {}",
                2 * (degree + 1),
                degree,
                knots.len()
            )));
        }
        if knots.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidPatch("knots must be non-decreasing".into()));
        }
        let first = knots[0];
        let last = knots[knots.len() - 1];
        if knots[degree] != first || knots[knots.len() - 1 - degree] != last {
            return Err(Error::InvalidPatch(format!(
                "open knot vector requires the end knots to repeat {} times",
                degree + 1
            )));
        }
        if first == last {
            return Err(Error::InvalidPatch("knot vector spans an empty patch".into()));
        }
        Ok(Self { knots, degree })
    }

    /// Open uniform knot vector on [0, 1] with `n_elems` equal spans.
    pub fn open_uniform(n_elems: usize, degree: usize) -> Self {
        assert!(n_elems >= 1 && degree >= 1);
        let mut knots = vec![0.0; degree + 1];
        for k in 1..n_elems {
            knots.push(k as f64 / n_elems as f64);
        }
        knots.extend(core::iter::repeat_n(1.0, degree + 1));
        Self { knots, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of basis functions.
    pub fn basis_count(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn first(&self) -> f64 {
        self.knots[0]
    }

    pub fn last(&self) -> f64 {
        self.knots[self.knots.len() - 1]
    }

    /// Index of the knot span containing `xi`: `knots[i] <= xi < knots[i+1]`.
    /// At the right end of the patch the last nonzero span is returned.
    pub fn find_span(&self, xi: f64) -> Result<usize> {
        if !(self.first()..=self.last()).contains(&xi) {
            return Err(Error::Domain { what: "parameter", value: xi });
        }
        let n = self.basis_count();
        if xi >= self.knots[n] {
            // right boundary clamps to the final nonzero span
            let mut span = n - 1;
            while self.knots[span + 1] <= self.knots[span] {
                span -= 1;
            }
            return Ok(span);
        }
        let mut low = self.degree;
        let mut high = n;
        while low + 1 < high {
            let mid = (low + high) / 2;
            if xi < self.knots[mid] {
                high = mid;
            } else {
                low = mid;
            }
        }
        Ok(low)
    }

    /// The `degree + 1` basis values that are nonzero at `xi`, with their span.
    ///
    /// Cox-de Boor recursion in its local form; 0/0 terms never arise because
    /// the span is nonzero.
    pub fn eval_basis(&self, xi: f64) -> Result<(usize, Vec<f64>)> {
        let span = self.find_span(xi)?;
        Ok((span, self.basis_on_span(xi, span, self.degree)))
    }

    /// Basis values and first parametric derivatives at `xi`.
    pub fn eval_basis_derivs(&self, xi: f64) -> Result<(usize, Vec<f64>, Vec<f64>)> {
        let span = self.find_span(xi)?;
        let p = self.degree;
        let values = self.basis_on_span(xi, span, p);
        if p == 0 {
            return Ok((span, values, vec![0.0]));
        }
        // N'_{i,p} = p * ( N_{i,p-1}/(k[i+p]-k[i]) - N_{i+1,p-1}/(k[i+p+1]-k[i+1]) )
        let lower = self.basis_on_span(xi, span, p - 1); // N_{span-p+1 .. span} at degree p-1
        let mut derivs = vec![0.0; p + 1];
        for r in 0..=p {
            let i = span - p + r;
            let left = if r >= 1 {
                let den = self.knots[i + p] - self.knots[i];
                if den > 0.0 {
                    lower[r - 1] / den
                } else {
                    0.0
                }
            } else {
                0.0
            };
            let right = if r < p {
                let den = self.knots[i + p + 1] - self.knots[i + 1];
                if den > 0.0 {
                    lower[r] / den
                } else {
                    0.0
                }
            } else {
                0.0
            };
            derivs[r] = p as f64 * (left - right);
        }
        Ok((span, values, derivs))
    }

    fn basis_on_span(&self, xi: f64, span: usize, degree: usize) -> Vec<f64> {
        let mut vals = vec![0.0; degree + 1];
        vals[0] = 1.0;
        let mut left = vec![0.0; degree + 1];
        let mut right = vec![0.0; degree + 1];
        for j in 1..=degree {
            left[j] = xi - self.knots[span + 1 - j];
            right[j] = self.knots[span + j] - xi;
            let mut saved = 0.0;
            for r in 0..j {
                let tmp = vals[r] / (right[r + 1] + left[j - r]);
                vals[r] = saved + right[r + 1] * tmp;
                saved = left[j - r] * tmp;
            }
            vals[j] = saved;
        }
        vals
    }

    /// Greville abscissae: knot averages used as collocation points.
    pub fn greville_abscissae(&self) -> Vec<f64> {
        let p = self.degree;
        (0..self.basis_count())
            .map(|i| self.knots[i + 1..=i + p].iter().sum::<f64>() / p as f64)
            .collect()
    }

    /// Nonzero spans as `(span index, start, end)`, in order.
    pub fn nonzero_spans(&self) -> Vec<(usize, f64, f64)> {
        let n = self.basis_count();
        (self.degree..n)
            .filter(|&i| self.knots[i + 1] > self.knots[i])
            .map(|i| (i, self.knots[i], self.knots[i + 1]))
            .collect()
    }
}

/// Point in the patch parameter square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub xi: f64,
    pub eta: f64,
}

impl ParamPoint {
    pub fn new(xi: f64, eta: f64) -> Self {
        Self { xi, eta }
    }
}

/// Nonzero 2-D rational basis values and parametric gradients at one point.
///
/// Local ordering runs the xi index fastest: `idx = b * (p + 1) + a`.
#[derive(Debug, Clone)]
pub struct Basis2d {
    pub span_xi: usize,
    pub span_eta: usize,
    pub values: Vec<f64>,
    pub d_xi: Vec<f64>,
    pub d_eta: Vec<f64>,
}

/// Tensor-product NURBS surface patch with an `n x m` control net in the plane.
///
/// Control points are stored with the xi index running fastest:
/// `cp = j * n + i`.
#[derive(Debug, Clone)]
pub struct Patch2D {
    xi: KnotVector,
    eta: KnotVector,
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

impl Patch2D {
    pub fn new(
        xi: KnotVector,
        eta: KnotVector,
        points: Vec<[f64; 2]>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let nc = xi.basis_count() * eta.basis_count();
        if points.len() != nc {
            return Err(Error::InvalidPatch(format!(
                "control net needs {} points ({} x {}), got {}",
                nc,
                xi.basis_count(),
                eta.basis_count(),
                points.len()
            )));
        }
        if weights.len() != nc {
            return Err(Error::InvalidPatch("one weight per control point required".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidPatch("weights must be strictly positive".into()));
        }
        Ok(Self { xi, eta, points, weights })
    }

    /// Rectangle `[x0, x1] x [y0, y1]` with a linear parameterization:
    /// control abscissae sit at the Greville points, so the geometric map is
    /// affine in (xi, eta). All weights are 1.
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64, n_elems: usize, degree: usize) -> Self {
        let kv_xi = KnotVector::open_uniform(n_elems, degree);
        let kv_eta = KnotVector::open_uniform(n_elems, degree);
        let gx = kv_xi.greville_abscissae();
        let gy = kv_eta.greville_abscissae();
        let mut points = Vec::with_capacity(gx.len() * gy.len());
        for &ey in &gy {
            for &ex in &gx {
                points.push([x0 + (x1 - x0) * ex, y0 + (y1 - y0) * ey]);
            }
        }
        let weights = vec![1.0; points.len()];
        Self { xi: kv_xi, eta: kv_eta, points, weights }
    }

    pub fn knots_xi(&self) -> &KnotVector {
        &self.xi
    }

    pub fn knots_eta(&self) -> &KnotVector {
        &self.eta
    }

    /// Basis counts `(n, m)` in the two parametric directions.
    pub fn dims(&self) -> (usize, usize) {
        (self.xi.basis_count(), self.eta.basis_count())
    }

    pub fn control_point_count(&self) -> usize {
        self.points.len()
    }

    pub fn control_point(&self, c: usize) -> [f64; 2] {
        self.points[c]
    }

    /// Nonzero rational basis values and parametric gradients at `pt`.
    pub fn rational_basis_2d(&self, pt: ParamPoint) -> Result<Basis2d> {
        let p = self.xi.degree();
        let q = self.eta.degree();
        let (span_xi, nx, dx) = self.xi.eval_basis_derivs(pt.xi)?;
        let (span_eta, ny, dy) = self.eta.eval_basis_derivs(pt.eta)?;
        let n = self.xi.basis_count();
        let nen = (p + 1) * (q + 1);

        let mut num = vec![0.0; nen];
        let mut num_xi = vec![0.0; nen];
        let mut num_eta = vec![0.0; nen];
        let (mut w, mut w_xi, mut w_eta) = (0.0, 0.0, 0.0);
        for b in 0..=q {
            let row = (span_eta - q + b) * n;
            for a in 0..=p {
                let wt = self.weights[row + span_xi - p + a];
                let idx = b * (p + 1) + a;
                num[idx] = nx[a] * ny[b] * wt;
                num_xi[idx] = dx[a] * ny[b] * wt;
                num_eta[idx] = nx[a] * dy[b] * wt;
                w += num[idx];
                w_xi += num_xi[idx];
                w_eta += num_eta[idx];
            }
        }

        let mut values = vec![0.0; nen];
        let mut d_xi = vec![0.0; nen];
        let mut d_eta = vec![0.0; nen];
        for idx in 0..nen {
            values[idx] = num[idx] / w;
            d_xi[idx] = (num_xi[idx] - values[idx] * w_xi) / w;
            d_eta[idx] = (num_eta[idx] - values[idx] * w_eta) / w;
        }
        Ok(Basis2d { span_xi, span_eta, values, d_xi, d_eta })
    }

    /// Global control-point indices matching the local ordering of `Basis2d`.
    pub fn active_control_points(&self, span_xi: usize, span_eta: usize) -> Vec<usize> {
        let p = self.xi.degree();
        let q = self.eta.degree();
        let n = self.xi.basis_count();
        let mut out = Vec::with_capacity((p + 1) * (q + 1));
        for b in 0..=q {
            for a in 0..=p {
                out.push((span_eta - q + b) * n + (span_xi - p + a));
            }
        }
        out
    }

    /// Physical point and Jacobian `d(x,y)/d(xi,eta)` of the surface map.
    ///
    /// The Jacobian is returned row-major: `jac[r][c] = d x_r / d u_c`.
    pub fn surface_point(&self, pt: ParamPoint) -> Result<([f64; 2], [[f64; 2]; 2])> {
        let basis = self.rational_basis_2d(pt)?;
        let cps = self.active_control_points(basis.span_xi, basis.span_eta);
        let mut x = [0.0; 2];
        let mut jac = [[0.0; 2]; 2];
        for (idx, &c) in cps.iter().enumerate() {
            let b = self.points[c];
            for r in 0..2 {
                x[r] += basis.values[idx] * b[r];
                jac[r][0] += basis.d_xi[idx] * b[r];
                jac[r][1] += basis.d_eta[idx] * b[r];
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if !(det > 0.0) {
            return Err(Error::DegenerateGeometry { det });
        }
        Ok((x, jac))
    }

    /// Inverts the surface map by Newton iteration. Exact after one step for
    /// the affine rectangle parameterization; iterates otherwise.
    pub fn param_from_xy(&self, x: f64, y: f64) -> Result<ParamPoint> {
        let mut pt = ParamPoint::new(0.5, 0.5);
        let scale = {
            let (lo, _) = self.surface_point(ParamPoint::new(0.0, 0.0))?;
            let (hi, _) = self.surface_point(ParamPoint::new(1.0, 1.0))?;
            ((hi[0] - lo[0]).abs() + (hi[1] - lo[1]).abs()).max(1.0)
        };
        for _ in 0..50 {
            let (pos, jac) = self.surface_point(pt)?;
            let rx = x - pos[0];
            let ry = y - pos[1];
            if rx.abs() + ry.abs() < 1e-14 * scale {
                return Ok(pt);
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            let dxi = (jac[1][1] * rx - jac[0][1] * ry) / det;
            let deta = (-jac[1][0] * rx + jac[0][0] * ry) / det;
            pt.xi = (pt.xi + dxi).clamp(self.xi.first(), self.xi.last());
            pt.eta = (pt.eta + deta).clamp(self.eta.first(), self.eta.last());
        }
        Err(Error::Domain { what: "physical point", value: x })
    }

    /// Tensor-product elements: pairs of nonzero spans with their parameter
    /// rectangles, eta-major order.
    pub fn elements(&self) -> Vec<ElementSpan> {
        let mut out = Vec::new();
        for &(sj, e0, e1) in &self.eta.nonzero_spans() {
            for &(si, x0, x1) in &self.xi.nonzero_spans() {
                out.push(ElementSpan {
                    span_xi: si,
                    span_eta: sj,
                    xi_range: (x0, x1),
                    eta_range: (e0, e1),
                });
            }
        }
        out
    }
}

/// One Bezier element of the tensor-product mesh.
#[derive(Debug, Clone, Copy)]
pub struct ElementSpan {
    pub span_xi: usize,
    pub span_eta: usize,
    pub xi_range: (f64, f64),
    pub eta_range: (f64, f64),
}
