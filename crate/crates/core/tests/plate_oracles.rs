//! Classical plate oracles: the Navier series for simply supported bending,
//! the classical buckling coefficients for uniaxial and biaxial compression,
//! consistency of the nonlinear path with the linear branch at small load,
//! and the taper-weakening trend of the critical load.

use varplate::analysis::{buckling_analysis, linear_bending, ReducedPlateSystem};
use varplate::laminate::{LaminaMaterial, Layup};
use varplate::model::{BcKind, Edge, LoadCase, PlateModel, ShearRule};
use varplate::nurbs::{ParamPoint, Patch2D};
use varplate::solve::{newton_raphson, SolverSettings};
use varplate::thickness::{tapered_x, ThicknessField};

const A: f64 = 10.0;
const H: f64 = 0.2;
const E: f64 = 3.0e6;
const NU: f64 = 0.25;

fn d_bar() -> f64 {
    E * H * H * H / (12.0 * (1.0 - NU * NU))
}

fn iso_plate(n_elems: usize, load: LoadCase, alpha: f64) -> PlateModel {
    let patch = Patch2D::rectangle(-A / 2.0, A / 2.0, -A / 2.0, A / 2.0, n_elems, 2);
    let f = tapered_x(A, H, alpha).unwrap();
    let thickness = ThicknessField::fit(&patch, f, 1).unwrap();
    let layup = Layup::new(&[0.0], LaminaMaterial::isotropic(E, NU)).unwrap();
    PlateModel::new(patch, thickness, layup, 5.0 / 6.0, load, ShearRule::Reduced).unwrap()
}

fn ss1_all(model: &mut PlateModel) {
    model.apply_bc(BcKind::SimplySupported1, &[Edge::Ad, Edge::Bc, Edge::Ab, Edge::Cd]);
    model.pin_in_plane_rigid_modes().unwrap();
}

/// Navier double series for the center deflection of a simply supported
/// Kirchhoff square under uniform load, as w D / (q a^4).
fn navier_center_coefficient() -> f64 {
    let mut sum = 0.0;
    for m in (1..400usize).step_by(2) {
        for n in (1..400usize).step_by(2) {
            let sm = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 }; // sin(m pi / 2)
            let sn = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let mm = m as f64;
            let nn = n as f64;
            sum += sm * sn / (mm * nn * (mm * mm + nn * nn).powi(2));
        }
    }
    16.0 / std::f64::consts::PI.powi(6) * sum
}

#[test]
fn ss1_linear_bending_matches_navier_series() {
    let mut model = iso_plate(6, LoadCase { pressure: 1.0, nx: 0.0, ny: 0.0 }, 0.0);
    ss1_all(&mut model);
    let state = linear_bending(&model).unwrap();
    let w = model.deflection_at(&state, ParamPoint::new(0.5, 0.5)).unwrap();
    let coeff = w * d_bar() / A.powi(4);
    let oracle = navier_center_coefficient();
    assert!((oracle - 0.00406).abs() < 2e-5, "series sanity: {oracle}");
    let rel = (coeff - oracle).abs() / oracle;
    assert!(rel < 0.02, "coefficient {coeff} vs {oracle}, rel {rel}");
}

#[test]
fn classical_buckling_coefficients() {
    let norm = A * A / (std::f64::consts::PI.powi(2) * d_bar());

    let mut uni = iso_plate(6, LoadCase { pressure: 0.0, nx: 1.0, ny: 0.0 }, 0.0);
    ss1_all(&mut uni);
    let sol = buckling_analysis(&uni).unwrap();
    let lambda_uni = sol.critical_load * norm;
    assert!((lambda_uni - 4.0).abs() / 4.0 < 0.02, "uniaxial {lambda_uni}");

    let mut bi = iso_plate(6, LoadCase { pressure: 0.0, nx: 1.0, ny: 1.0 }, 0.0);
    ss1_all(&mut bi);
    let sol = buckling_analysis(&bi).unwrap();
    let lambda_bi = sol.critical_load * norm;
    assert!((lambda_bi - 2.0).abs() / 2.0 < 0.02, "biaxial {lambda_bi}");
}

#[test]
fn mode_invariant_under_reference_load_scaling() {
    let mut one = iso_plate(4, LoadCase { pressure: 0.0, nx: 1.0, ny: 0.0 }, 0.0);
    ss1_all(&mut one);
    let sol1 = buckling_analysis(&one).unwrap();

    let mut ten = iso_plate(4, LoadCase { pressure: 0.0, nx: 10.0, ny: 0.0 }, 0.0);
    ss1_all(&mut ten);
    let sol10 = buckling_analysis(&ten).unwrap();

    assert!((sol1.critical_load / sol10.critical_load - 10.0).abs() < 1e-6);
    let diff = (&sol1.mode - &sol10.mode).norm().min((&sol1.mode + &sol10.mode).norm());
    assert!(diff < 1e-6 * sol1.mode.norm(), "modes differ by {diff}");
}

#[test]
fn newton_small_load_matches_linear_branch() {
    let mut model = iso_plate(4, LoadCase { pressure: 1e-3, nx: 0.0, ny: 0.0 }, 0.0);
    ss1_all(&mut model);
    let linear = linear_bending(&model).unwrap();

    let probe = ParamPoint::new(0.5, 0.5);
    let system = ReducedPlateSystem::new(&model, probe).unwrap();
    let settings = SolverSettings { tolerance: 1e-10, ..Default::default() };
    let free = model.free_dofs();
    let (u_red, _) = newton_raphson(&system, 1.0, &settings, &model.reduce_vector(&linear, &free))
        .unwrap();
    let nonlinear = system.expand(&u_red);

    let w_lin = model.deflection_at(&linear, probe).unwrap();
    let w_nl = model.deflection_at(&nonlinear, probe).unwrap();
    let rel = (w_nl - w_lin).abs() / w_lin.abs();
    assert!(rel < 1e-3, "nonlinear departs from linear by {rel} at small load");
}

#[test]
fn taper_weakens_critical_load_monotonically() {
    let norm = A * A / (std::f64::consts::PI.powi(2) * d_bar());
    let mut lambdas = Vec::new();
    for &alpha in &[0.0, 0.005, 0.01] {
        let mut model = iso_plate(6, LoadCase { pressure: 0.0, nx: 1.0, ny: 0.0 }, alpha);
        ss1_all(&mut model);
        lambdas.push(buckling_analysis(&model).unwrap().critical_load * norm);
    }
    assert!(
        lambdas[0] > lambdas[1] && lambdas[1] > lambdas[2],
        "critical loads not strictly decreasing: {lambdas:?}"
    );
}

#[test]
fn cantilever_deflection_decreases_with_taper() {
    let probe = ParamPoint::new(1.0, 0.5); // midpoint of the free edge BC
    let mut tips = Vec::new();
    for &alpha in &[0.0, 0.005, 0.01] {
        let mut model = iso_plate(6, LoadCase { pressure: 1e-4, nx: 0.0, ny: 0.0 }, alpha);
        model.apply_bc(BcKind::Clamped, &[Edge::Ad]);
        let state = linear_bending(&model).unwrap();
        tips.push(model.deflection_at(&state, probe).unwrap());
    }
    assert!(
        tips[0] > tips[1] && tips[1] > tips[2],
        "tip deflections not decreasing with taper: {tips:?}"
    );
}
