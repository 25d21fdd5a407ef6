//! Matrix-level solvers: dense Cholesky with pivot reporting, the buckling
//! eigenproblem by inverse power iteration with deflation, Newton-Raphson,
//! and Riks arc-length continuation in its normal-plane (Riks-Wempner)
//! form, where corrector iterates stay orthogonal to the predictor tangent
//! in the combined displacement-load space.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Convergence and step-control parameters shared by Newton and Riks.
#[derive(Debug, Clone)]
pub struct SolverSettings {
    /// Relative displacement-increment convergence tolerance.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub initial_arc_length: f64,
    pub max_steps: usize,
    /// Arc-length growth applied after a fast-converging step.
    pub growth: f64,
    /// Iteration count at or below which a step counts as fast.
    pub fast_iterations: usize,
    pub max_arc_length: f64,
    /// Cap on the predictor's load-factor advance per step. Keeps sharp
    /// bifurcation knees resolved for small imperfections; displacement-
    /// dominated steps are unaffected.
    pub max_lambda_increment: Option<f64>,
    /// Reject steps whose probe response moves more than this; the
    /// arc-length is halved and the step retried.
    pub max_probe_increment: Option<f64>,
    /// Stop once the probe value exceeds this magnitude.
    pub stop_probe: Option<f64>,
    /// Stop once the load factor exceeds this value.
    pub stop_lambda: Option<f64>,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            tolerance: 1e-3,
            max_iterations: 20,
            initial_arc_length: 1.0,
            max_steps: 200,
            growth: 1.5,
            fast_iterations: 5,
            max_arc_length: f64::INFINITY,
            max_lambda_increment: None,
            max_probe_increment: None,
            stop_probe: None,
            stop_lambda: None,
        }
    }
}

/// Absolute floor for relative displacement norms.
const NORM_FLOOR: f64 = 1e-12;

/// Lower Cholesky factor of a symmetric positive definite matrix.
/// Reports the offending pivot on failure.
pub fn cholesky_factor(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut l = a.lower_triangle();
    for j in 0..n {
        let mut d = l[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::Factorization { pivot: j });
        }
        d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = l[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L L^T x = b` given the lower factor.
pub fn cholesky_solve(l: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = l.nrows();
    let mut x = b.clone();
    for i in 0..n {
        let mut s = x[i];
        for k in 0..i {
            s -= l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Direct solve of an SPD system with one step of iterative refinement.
pub fn linear_solve(k: &DMatrix<f64>, f: &DVector<f64>) -> Result<DVector<f64>> {
    let l = cholesky_factor(k)?;
    let mut u = cholesky_solve(&l, f);
    let r = f - k * &u;
    u += cholesky_solve(&l, &r);
    Ok(u)
}

fn lu_solve(k: DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    k.lu().solve(b).ok_or(Error::SingularTangent)
}

/// Smallest positive eigenvalue and its eigenvector of `K phi = lambda Kg phi`
/// with `K` SPD, by inverse power iteration on `K^-1 Kg` with K-orthogonal
/// deflation of dominant negative modes. The mode is normalized so its
/// largest-magnitude component equals +1.
pub fn linear_buckling(k: &DMatrix<f64>, kg: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let n = k.nrows();
    let l = cholesky_factor(k)?;
    let mut deflated: Vec<DVector<f64>> = Vec::new();

    let k_orthogonalize = |v: &mut DVector<f64>, modes: &[DVector<f64>]| {
        for phi in modes {
            let kp = k * phi;
            let coeff = v.dot(&kp) / phi.dot(&kp);
            *v -= phi * coeff;
        }
    };

    for attempt in 0..12 {
        // deterministic start vector, varied per attempt
        let mut v = DVector::from_fn(n, |i, _| {
            1.0 + 0.5 * (((i * 2654435761 + attempt * 97) % 1009) as f64 / 1009.0)
        });
        k_orthogonalize(&mut v, &deflated);
        let nv = v.norm();
        if nv == 0.0 {
            break;
        }
        v /= nv;

        let mut mu = 0.0;
        let mut converged = false;
        for _ in 0..10_000 {
            let y = kg * &v;
            if y.norm() < 1e-300 {
                break; // Kg annihilates the remaining subspace
            }
            let mut z = cholesky_solve(&l, &y);
            k_orthogonalize(&mut z, &deflated);
            let nz = z.norm();
            if nz < 1e-300 {
                break;
            }
            z /= nz;
            let kgz = kg * &z;
            let kz = k * &z;
            mu = z.dot(&kgz) / z.dot(&kz);
            let res = (&kgz - &kz * mu).norm() / kgz.norm().max(1e-300);
            v = z;
            if res < 1e-10 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Stability("eigen iteration did not converge".into()));
        }
        if mu > 0.0 {
            let lambda = 1.0 / mu;
            // sign convention: largest-magnitude component positive
            let imax = v.iter().enumerate().fold((0, 0.0f64), |acc, (i, &x)| {
                if x.abs() > acc.1 { (i, x.abs()) } else { acc }
            });
            let mode = &v / v[imax.0];
            return Ok((lambda, mode));
        }
        deflated.push(v);
    }
    Err(Error::Stability("no positive eigenvalue found".into()))
}

/// A discrete equilibrium problem `f_int(u) = lambda * f_ref`.
pub trait NonlinearSystem {
    fn n_unknowns(&self) -> usize;
    fn internal_force(&self, u: &DVector<f64>) -> DVector<f64>;
    fn tangent(&self, u: &DVector<f64>) -> DMatrix<f64>;
    fn force_and_tangent(&self, u: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        (self.internal_force(u), self.tangent(u))
    }
    fn reference_load(&self) -> DVector<f64>;
    /// Scalar response recorded along equilibrium paths.
    fn probe(&self, u: &DVector<f64>) -> f64;
}

/// Full Newton iteration at a fixed load factor. Returns the converged state
/// and the number of linear solves spent.
pub fn newton_raphson<S: NonlinearSystem>(
    system: &S,
    lambda: f64,
    settings: &SolverSettings,
    initial: &DVector<f64>,
) -> Result<(DVector<f64>, usize)> {
    let fref = system.reference_load();
    let mut u = initial.clone();
    let mut last_residual = f64::INFINITY;
    for it in 0..settings.max_iterations {
        let (f, k) = system.force_and_tangent(&u);
        let r = &fref * lambda - f;
        last_residual = r.norm();
        let scale = (fref.norm() * lambda.abs()).max(NORM_FLOOR);
        if it > 0 && last_residual <= 1e-12 * scale {
            return Ok((u, it));
        }
        let du = lu_solve(k, &r)?;
        u += &du;
        if du.norm() <= settings.tolerance * u.norm().max(NORM_FLOOR) {
            return Ok((u, it + 1));
        }
    }
    Err(Error::NonConvergence {
        iterations: settings.max_iterations,
        residual: last_residual,
        last_state: alloc::boxed::Box::new(u),
    })
}

/// One accepted continuation step.
#[derive(Debug, Clone)]
pub struct PathRecord {
    pub step: usize,
    pub lambda: f64,
    pub state: DVector<f64>,
    pub probe: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    MaxSteps,
    ProbeTarget,
    LoadTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOutcome {
    Completed(StopReason),
    /// The adaptive arc-length shrank below 1e-10 of its initial value;
    /// the records hold the partial path.
    ArcLengthUnderflow,
}

/// Ordered equilibrium states produced by continuation.
#[derive(Debug, Clone)]
pub struct EquilibriumPath {
    pub records: Vec<PathRecord>,
    pub outcome: PathOutcome,
}

impl EquilibriumPath {
    pub fn converged(&self) -> bool {
        matches!(self.outcome, PathOutcome::Completed(_))
    }

    /// Converts an arc-length underflow into an error, keeping completed
    /// paths untouched.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged() {
            Ok(self)
        } else {
            Err(Error::ArcLengthUnderflow { steps_completed: self.records.len() })
        }
    }

    pub fn max_lambda(&self) -> Option<f64> {
        self.records.iter().map(|r| r.lambda).fold(None, |m, l| {
            Some(m.map_or(l, |v: f64| v.max(l)))
        })
    }

    /// Load factor at which `|probe|` first reaches `threshold`, linearly
    /// interpolated between the bracketing records.
    pub fn lambda_at_probe(&self, threshold: f64) -> Option<f64> {
        let mut prev: Option<&PathRecord> = None;
        for rec in &self.records {
            if rec.probe.abs() >= threshold {
                return Some(match prev {
                    Some(p) => {
                        let t = (threshold - p.probe.abs())
                            / (rec.probe.abs() - p.probe.abs()).max(1e-300);
                        p.lambda + t * (rec.lambda - p.lambda)
                    }
                    None => rec.lambda,
                });
            }
            prev = Some(rec);
        }
        None
    }
}

/// Traces the equilibrium path from the unloaded state with normal-plane
/// arc-length control: adaptive step halving on failure, growth after fast
/// convergence, and load-direction tracking through limit points.
pub fn riks_trace<S: NonlinearSystem>(
    system: &S,
    settings: &SolverSettings,
) -> Result<EquilibriumPath> {
    let fref = system.reference_load();
    if fref.norm() == 0.0 {
        return Err(Error::Parameter("reference load must be nonzero".into()));
    }
    let mut u = DVector::zeros(system.n_unknowns());
    let mut lambda = 0.0f64;
    let mut ds = settings.initial_arc_length;
    let ds_floor = 1e-10 * settings.initial_arc_length;
    let mut prev_increment: Option<(DVector<f64>, f64)> = None;
    let mut records: Vec<PathRecord> = Vec::new();

    let outcome = 'path: loop {
        if records.len() >= settings.max_steps {
            break PathOutcome::Completed(StopReason::MaxSteps);
        }

        // predictor tangent at the current point
        let (_, k) = system.force_and_tangent(&u);
        let ut = lu_solve(k, &fref)?;
        let scale = (ut.norm_squared() + 1.0).sqrt();
        let that_u = &ut / scale;
        let that_l = 1.0 / scale;
        let dir = match &prev_increment {
            Some((du_prev, dl_prev)) => {
                let d = that_u.dot(du_prev) + that_l * dl_prev;
                if d >= 0.0 { 1.0 } else { -1.0 }
            }
            None => 1.0,
        };

        // corrector attempts with adaptive arc-length
        loop {
            let ds_eff = match settings.max_lambda_increment {
                Some(cap) if that_l * ds > cap => cap / that_l,
                _ => ds,
            };
            let mut uc = &u + &that_u * (dir * ds_eff);
            let mut lc = lambda + that_l * dir * ds_eff;
            let mut converged = false;
            let mut iters = 0;

            for it in 0..settings.max_iterations {
                let (f, k) = system.force_and_tangent(&uc);
                let res_scale = (fref.norm() * lc.abs()).max(f.norm()).max(NORM_FLOOR);
                let r = &fref * lc - f;
                if it > 0 && r.norm() <= 1e-12 * res_scale {
                    converged = true;
                    break;
                }
                let lu = k.lu();
                let du_r = match lu.solve(&r) {
                    Some(x) => x,
                    None => break,
                };
                let du_f = match lu.solve(&fref) {
                    Some(x) => x,
                    None => break,
                };
                let denom = that_l + that_u.dot(&du_f);
                if denom.abs() < 1e-300 {
                    break;
                }
                let dl = -that_u.dot(&du_r) / denom;
                let du = du_r + &du_f * dl;
                uc += &du;
                lc += dl;
                iters = it + 1;
                if du.norm() <= settings.tolerance * uc.norm().max(NORM_FLOOR) {
                    converged = true;
                    break;
                }
            }

            if converged {
                let probe = system.probe(&uc);
                if let Some(cap) = settings.max_probe_increment {
                    let last_probe = records.last().map_or(0.0, |r: &PathRecord| r.probe);
                    if (probe - last_probe).abs() > cap {
                        ds *= 0.5;
                        if ds < ds_floor {
                            break 'path PathOutcome::ArcLengthUnderflow;
                        }
                        continue;
                    }
                }
                let increment = (&uc - &u, lc - lambda);
                u = uc;
                lambda = lc;
                prev_increment = Some(increment);
                records.push(PathRecord {
                    step: records.len(),
                    lambda,
                    state: u.clone(),
                    probe,
                    iterations: iters,
                });
                if iters <= settings.fast_iterations {
                    ds = (ds * settings.growth).min(settings.max_arc_length);
                }
                if let Some(target) = settings.stop_probe {
                    if probe.abs() >= target {
                        break 'path PathOutcome::Completed(StopReason::ProbeTarget);
                    }
                }
                if let Some(target) = settings.stop_lambda {
                    if lambda >= target {
                        break 'path PathOutcome::Completed(StopReason::LoadTarget);
                    }
                }
                break; // next step
            }

            ds *= 0.5;
            if ds < ds_floor {
                break 'path PathOutcome::ArcLengthUnderflow;
            }
        }
    };

    Ok(EquilibriumPath { records, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cholesky_solves_diagonal_system() {
        let k = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 4.0]));
        let f = DVector::from_vec(vec![2.0, 4.0]);
        let u = linear_solve(&k, &f).unwrap();
        assert_relative_eq!(u[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(u[1], 1.0, max_relative = 1e-14);

        let zero = DVector::zeros(2);
        let u = linear_solve(&k, &zero).unwrap();
        assert_eq!(u.norm(), 0.0);
    }

    #[test]
    fn cholesky_reports_pivot_on_indefinite_input() {
        let k = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        match cholesky_factor(&k) {
            Err(Error::Factorization { pivot }) => assert_eq!(pivot, 1),
            other => panic!("expected factorization error, got {other:?}"),
        }
    }

    #[test]
    fn random_spd_system_residual() {
        // deterministic pseudo-random SPD matrix: A = B B^T + n I
        let n = 50;
        let b = DMatrix::from_fn(n, n, |i, j| ((i * 73 + j * 37 + 11) % 1000) as f64 / 1000.0 - 0.5);
        let k = &b * b.transpose() + DMatrix::identity(n, n) * n as f64 * 0.1;
        let f = DVector::from_fn(n, |i, _| ((i * 29 + 3) % 100) as f64 / 100.0);
        let u = linear_solve(&k, &f).unwrap();
        let res = (&f - &k * &u).norm() / f.norm();
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn buckling_of_diagonal_pencil() {
        let k = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 8.0]));
        let kg = DMatrix::identity(2, 2);
        let (lambda, mode) = linear_buckling(&k, &kg).unwrap();
        assert_relative_eq!(lambda, 2.0, max_relative = 1e-9);
        assert_relative_eq!(mode[0], 1.0, max_relative = 1e-9);
        assert!(mode[1].abs() < 1e-8);
    }

    #[test]
    fn buckling_skips_negative_eigenvalues() {
        // Kg has a dominant negative direction; smallest positive lambda is 3
        let k = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0]));
        let kg = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -2.0]));
        let (lambda, _) = linear_buckling(&k, &kg).unwrap();
        assert_relative_eq!(lambda, 3.0, max_relative = 1e-9);
    }

    #[test]
    fn buckling_errors_without_positive_eigenvalue() {
        let k = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0]));
        let kg = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, -2.0]));
        assert!(matches!(linear_buckling(&k, &kg), Err(Error::Stability(_))));
    }

    #[test]
    fn newton_failure_carries_last_state() {
        let settings = SolverSettings { tolerance: 1e-30, max_iterations: 3, ..Default::default() };
        match newton_raphson(&Cubic, 2.0, &settings, &DVector::zeros(1)) {
            Err(Error::NonConvergence { iterations, last_state, .. }) => {
                assert_eq!(iterations, 3);
                // the carried iterate has already moved toward the root at 1
                assert!((last_state[0] - 1.0).abs() < 0.2, "state {}", last_state[0]);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn underflowing_path_converts_to_error() {
        let settings = SolverSettings {
            tolerance: 1e-300,
            max_iterations: 1,
            initial_arc_length: 0.1,
            ..Default::default()
        };
        let path = riks_trace(&Cubic, &settings).unwrap();
        assert!(!path.converged());
        assert!(matches!(
            path.require_converged(),
            Err(Error::ArcLengthUnderflow { .. })
        ));
    }

    #[test]
    fn eigenpair_residual_contract() {
        let n = 20;
        let b = DMatrix::from_fn(n, n, |i, j| (((i + 1) * (j + 2)) % 13) as f64 / 13.0 - 0.4);
        let k = &b * b.transpose() + DMatrix::identity(n, n) * 2.0;
        let c = DMatrix::from_fn(n, n, |i, j| (((i + 3) * (j + 5)) % 7) as f64 / 7.0 - 0.3);
        let kg = &c * c.transpose() * 0.5;
        let (lambda, mode) = linear_buckling(&k, &kg).unwrap();
        let res = (&k * &mode - &kg * &mode * lambda).norm() / (&k * &mode).norm();
        assert!(res < 1e-8, "residual {res}");
    }

    /// Scalar system f_int(u) = u + u^3 with unit reference load.
    struct Cubic;
    impl NonlinearSystem for Cubic {
        fn n_unknowns(&self) -> usize {
            1
        }
        fn internal_force(&self, u: &DVector<f64>) -> DVector<f64> {
            DVector::from_vec(vec![u[0] + u[0].powi(3)])
        }
        fn tangent(&self, u: &DVector<f64>) -> DMatrix<f64> {
            DMatrix::from_vec(1, 1, vec![1.0 + 3.0 * u[0] * u[0]])
        }
        fn reference_load(&self) -> DVector<f64> {
            DVector::from_vec(vec![1.0])
        }
        fn probe(&self, u: &DVector<f64>) -> f64 {
            u[0]
        }
    }

    /// Linear 2-dof system for path-shape checks.
    struct Linear2;
    impl NonlinearSystem for Linear2 {
        fn n_unknowns(&self) -> usize {
            2
        }
        fn internal_force(&self, u: &DVector<f64>) -> DVector<f64> {
            self.tangent(u) * u
        }
        fn tangent(&self, _: &DVector<f64>) -> DMatrix<f64> {
            DMatrix::from_row_slice(2, 2, &[4.0, 1.0, 1.0, 3.0])
        }
        fn reference_load(&self) -> DVector<f64> {
            DVector::from_vec(vec![1.0, 2.0])
        }
        fn probe(&self, u: &DVector<f64>) -> f64 {
            u[0]
        }
    }

    /// Scalar limit-point problem f_int(u) = u - u^2, limit at (0.5, 0.25).
    struct Fold;
    impl NonlinearSystem for Fold {
        fn n_unknowns(&self) -> usize {
            1
        }
        fn internal_force(&self, u: &DVector<f64>) -> DVector<f64> {
            DVector::from_vec(vec![u[0] - u[0] * u[0]])
        }
        fn tangent(&self, u: &DVector<f64>) -> DMatrix<f64> {
            DMatrix::from_vec(1, 1, vec![1.0 - 2.0 * u[0]])
        }
        fn reference_load(&self) -> DVector<f64> {
            DVector::from_vec(vec![1.0])
        }
        fn probe(&self, u: &DVector<f64>) -> f64 {
            u[0]
        }
    }

    #[test]
    fn newton_converges_on_cubic() {
        let settings = SolverSettings { tolerance: 1e-10, ..Default::default() };
        let (u, _) = newton_raphson(&Cubic, 2.0, &settings, &DVector::zeros(1)).unwrap();
        assert_relative_eq!(u[0], 1.0, max_relative = 1e-9);
    }

    #[test]
    fn newton_solves_linear_problem_in_one_iteration() {
        let settings = SolverSettings::default();
        let (u, iters) = newton_raphson(&Linear2, 3.0, &settings, &DVector::zeros(2)).unwrap();
        assert_eq!(iters, 1);
        let expect = Linear2.tangent(&u).lu().solve(&(Linear2.reference_load() * 3.0)).unwrap();
        assert_relative_eq!((&u - &expect).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn riks_traces_linear_ray() {
        let settings = SolverSettings {
            initial_arc_length: 0.3,
            max_steps: 12,
            ..Default::default()
        };
        let path = riks_trace(&Linear2, &settings).unwrap();
        assert!(path.converged());
        let kinv_f = Linear2
            .tangent(&DVector::zeros(2))
            .lu()
            .solve(&Linear2.reference_load())
            .unwrap();
        for rec in &path.records {
            let expect = &kinv_f * rec.lambda;
            assert_relative_eq!((&rec.state - expect).norm(), 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn riks_passes_through_limit_point() {
        let ds = 0.02;
        let settings = SolverSettings {
            tolerance: 1e-8,
            initial_arc_length: ds,
            max_steps: 120,
            max_arc_length: ds,
            ..Default::default()
        };
        let path = riks_trace(&Fold, &settings).unwrap();
        assert!(path.converged());
        // every record sits on lambda = u - u^2
        for rec in &path.records {
            assert_relative_eq!(rec.lambda, rec.probe - rec.probe * rec.probe, epsilon = 1e-7);
        }
        // some record lies within one arc length of the analytic limit point
        let dist = path
            .records
            .iter()
            .map(|r| ((r.probe - 0.5).powi(2) + (r.lambda - 0.25).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert!(dist <= ds, "closest approach to the limit point: {dist}");
        assert!(path.max_lambda().unwrap() <= 0.25 + 1e-6);
        let last = path.records.last().unwrap();
        assert!(last.probe > 0.5, "did not pass the fold: u = {}", last.probe);
        let descending = path
            .records
            .windows(2)
            .any(|w| w[1].lambda < w[0].lambda && w[1].probe > w[0].probe);
        assert!(descending, "no post-limit descent recorded");
    }

    #[test]
    fn riks_requires_nonzero_reference_load() {
        struct ZeroLoad;
        impl NonlinearSystem for ZeroLoad {
            fn n_unknowns(&self) -> usize {
                1
            }
            fn internal_force(&self, u: &DVector<f64>) -> DVector<f64> {
                u.clone()
            }
            fn tangent(&self, _: &DVector<f64>) -> DMatrix<f64> {
                DMatrix::identity(1, 1)
            }
            fn reference_load(&self) -> DVector<f64> {
                DVector::zeros(1)
            }
            fn probe(&self, u: &DVector<f64>) -> f64 {
                u[0]
            }
        }
        assert!(riks_trace(&ZeroLoad, &SolverSettings::default()).is_err());
    }

    #[test]
    fn path_probe_interpolation() {
        let path = EquilibriumPath {
            records: vec![
                PathRecord { step: 0, lambda: 1.0, state: DVector::zeros(1), probe: 0.1, iterations: 1 },
                PathRecord { step: 1, lambda: 2.0, state: DVector::zeros(1), probe: 0.3, iterations: 1 },
            ],
            outcome: PathOutcome::Completed(StopReason::MaxSteps),
        };
        let lam = path.lambda_at_probe(0.2).unwrap();
        assert_relative_eq!(lam, 1.5, max_relative = 1e-12);
        assert!(path.lambda_at_probe(0.5).is_none());
    }
}
