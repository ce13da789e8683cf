#![allow(dead_code)]

use driven_jcm::{AnalyticModel, InitialFields, ModelParams, Truncation};
use num_complex::Complex64;

pub fn main_params(delta_over_kappa_eff: f64) -> ModelParams {
    ModelParams::with_relative_detuning(3.0, 1.0, delta_over_kappa_eff).unwrap()
}

pub fn main_fields(params: &ModelParams) -> InitialFields {
    InitialFields::new(params, Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0))
}

pub fn main_model(delta_over_kappa_eff: f64) -> AnalyticModel {
    let params = main_params(delta_over_kappa_eff);
    let fields = main_fields(&params);
    AnalyticModel::new(params, fields, Truncation::default())
}

pub fn rel_dev(reference: Complex64, value: Complex64) -> f64 {
    (reference - value).norm() / (1.0 + reference.norm())
}
