//! Plate-level analysis drivers: linear bending, the buckling eigenproblem
//! with its membrane pre-solve, and the reduced nonlinear system handed to
//! Newton and Riks.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::{DMatrix, DVector};

use crate::model::{DisplacementState, PlateModel};
use crate::nurbs::ParamPoint;
use crate::solve::{linear_buckling, linear_solve, NonlinearSystem};
use crate::{Error, Result};

/// Solves the linear (small-deflection) problem under the model's load case.
pub fn linear_bending(model: &PlateModel) -> Result<DisplacementState> {
    let free = model.free_dofs();
    let (_, k) = model.assemble(&model.zero_state());
    let kr = model.reduce_matrix(&k, &free);
    let f = model.load_vector()?;
    let fr = model.reduce_vector(&f, &free);
    let ur = linear_solve(&kr, &fr)?;
    Ok(model.expand_vector(&ur, &free))
}

/// Critical load factor and buckling mode of the perfect plate.
#[derive(Debug, Clone)]
pub struct BucklingSolution {
    pub critical_load: f64,
    /// Full-size mode, unit largest transverse component up to sign.
    pub mode: DisplacementState,
}

/// Linearized stability analysis: a linear pre-solve under the reference
/// edge load supplies the membrane prestress for the geometric stiffness,
/// then the smallest positive eigenvalue of `K phi = lambda (-Kg) phi` is
/// extracted.
pub fn buckling_analysis(model: &PlateModel) -> Result<BucklingSolution> {
    let free = model.free_dofs();
    let (_, k0) = model.assemble(&model.zero_state());
    let kr = model.reduce_matrix(&k0, &free);
    let f = model.load_vector()?;
    if f.norm() == 0.0 {
        return Err(Error::Parameter("buckling analysis needs a nonzero edge load".into()));
    }
    let fr = model.reduce_vector(&f, &free);
    let u0r = linear_solve(&kr, &fr)?;
    let u0 = model.expand_vector(&u0r, &free);
    // compressive prestress makes -Kg positive along the loaded direction
    let kg = -model.geometric_stiffness(&u0);
    let kgr = model.reduce_matrix(&kg, &free);
    let (critical_load, mode_r) = linear_buckling(&kr, &kgr)?;
    Ok(BucklingSolution {
        critical_load,
        mode: model.expand_vector(&mode_r, &free),
    })
}

/// The constrained plate equations as a `NonlinearSystem` over the free dofs.
pub struct ReducedPlateSystem<'a> {
    model: &'a PlateModel,
    free: Vec<usize>,
    fref: DVector<f64>,
    probe: ParamPoint,
}

impl<'a> ReducedPlateSystem<'a> {
    pub fn new(model: &'a PlateModel, probe: ParamPoint) -> Result<Self> {
        let free = model.free_dofs();
        let f = model.load_vector()?;
        let fref = model.reduce_vector(&f, &free);
        // validate the probe point once
        model.deflection_at(&model.zero_state(), probe)?;
        Ok(Self { model, free, fref, probe })
    }

    pub fn expand(&self, u: &DVector<f64>) -> DisplacementState {
        self.model.expand_vector(u, &self.free)
    }

    pub fn free_dofs(&self) -> &[usize] {
        &self.free
    }

    pub fn model(&self) -> &PlateModel {
        self.model
    }
}

impl NonlinearSystem for ReducedPlateSystem<'_> {
    fn n_unknowns(&self) -> usize {
        self.free.len()
    }

    fn internal_force(&self, u: &DVector<f64>) -> DVector<f64> {
        let full = self.expand(u);
        self.model.reduce_vector(&self.model.internal_force(&full), &self.free)
    }

    fn tangent(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let full = self.expand(u);
        let (_, k) = self.model.assemble(&full);
        self.model.reduce_matrix(&k, &self.free)
    }

    fn force_and_tangent(&self, u: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let full = self.expand(u);
        let (f, k) = self.model.assemble(&full);
        (
            self.model.reduce_vector(&f, &self.free),
            self.model.reduce_matrix(&k, &self.free),
        )
    }

    fn reference_load(&self) -> DVector<f64> {
        self.fref.clone()
    }

    fn probe(&self, u: &DVector<f64>) -> f64 {
        let full = self.expand(u);
        self.model
            .deflection_at(&full, self.probe)
            .expect("probe point validated at construction")
    }
}

/// Arc length whose first predictor advances the load factor by `dlambda`.
pub fn arc_length_for_load_increment<S: NonlinearSystem>(system: &S, dlambda: f64) -> Result<f64> {
    let zero = DVector::zeros(system.n_unknowns());
    let (_, k) = system.force_and_tangent(&zero);
    let ut = k
        .lu()
        .solve(&system.reference_load())
        .ok_or(Error::SingularTangent)?;
    Ok(dlambda * (ut.norm_squared() + 1.0).sqrt())
}

/// Arc length whose first predictor moves the probe response by `dprobe`,
/// using the linear response per unit load factor.
pub fn arc_length_for_probe_increment<S: NonlinearSystem>(system: &S, dprobe: f64) -> Result<f64> {
    let zero = DVector::zeros(system.n_unknowns());
    let (_, k) = system.force_and_tangent(&zero);
    let ut = k
        .lu()
        .solve(&system.reference_load())
        .ok_or(Error::SingularTangent)?;
    let per_lambda = system.probe(&ut).abs();
    if per_lambda < 1e-300 {
        return Err(Error::Parameter(
            "probe has no linear response; scale the arc length by load instead".into(),
        ));
    }
    let dlambda = dprobe / per_lambda;
    Ok(dlambda * (ut.norm_squared() + 1.0).sqrt())
}
