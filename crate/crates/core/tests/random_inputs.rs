mod common;

use common::rel_dev;
use driven_jcm::observables::{gamma_matrix, physical_gram, quadrature_variance, sv_matrix};
use driven_jcm::oracle;
use driven_jcm::{
    AnalyticModel, InitialFields, Mode, ModelParams, MomentOrder, MomentSource, Route, Truncation,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn setup(ka: f64, kb: f64, delta: f64, a: (f64, f64), b: (f64, f64)) -> AnalyticModel {
    let params = ModelParams::with_relative_detuning(ka, kb, delta).unwrap();
    let fields = InitialFields::new(
        &params,
        Complex64::from_polar(a.0, a.1),
        Complex64::from_polar(b.0, b.1),
    );
    AnalyticModel::new(params, fields, Truncation::default())
}

fn inputs() -> impl Strategy<Value = (f64, f64, f64, (f64, f64), (f64, f64), f64)> {
    (
        0.0f64..4.0,
        0.05f64..4.0,
        -20.0f64..20.0,
        (0.0f64..1.5, -3.2f64..3.2),
        (0.0f64..1.5, -3.2f64..3.2),
        0.0f64..30.0,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn analytic_matches_oracle((ka, kb, delta, a, b, t) in inputs(), pick in 0usize..70) {
        let model = setup(ka, kb, delta, a, b);
        let order = MomentOrder::all_up_to(4)[pick];
        let state = oracle::evolve_auto(model.fields(), model.params(), t, oracle::DEFAULT_CUTOFF).unwrap();
        let o = state.moment(order).unwrap();
        for route in [Route::preferred(order), Route::Generalized] {
            let x = model.at(t).moment_via(route, order).unwrap();
            prop_assert!(rel_dev(o, x) < 1e-8, "{} {:?}: {} vs {}", order, route, x, o);
        }
    }

    #[test]
    fn matrices_stay_hermitian_and_physical((ka, kb, delta, a, b, t) in inputs()) {
        let model = setup(ka, kb, delta, a, b);
        let snap = model.at(t);
        prop_assert!(sv_matrix(&snap).unwrap().hermiticity_defect() < 1e-10);
        prop_assert!(gamma_matrix(&snap).unwrap().hermiticity_defect() < 1e-10);
        let g = physical_gram(&snap).unwrap();
        prop_assert!(g.hermiticity_defect() < 1e-10);
        prop_assert!(g.min_eigenvalue() >= -1e-8);
        for mode in [Mode::A, Mode::B] {
            let v = quadrature_variance(&snap, mode).unwrap();
            prop_assert!(v.v_q * v.v_p >= 0.25 - 1e-9);
        }
    }
}
