use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use super::generalized::generalized_kernel;
use super::kernel::MomentKernel;
use super::monomial::BaseValues;
use super::single_mode::single_mode_kernel;
use super::{Mode, MomentOrder, Truncation};
use crate::model::{EvolutionTable, InitialFields, ModelParams, TimeGrid};
use crate::parallel::{try_map_items, Execution};
use crate::source::MomentSource;
use crate::{Error, Result};

/// Which closed-form assembly produces a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Single-mode sums for `<a^†r a^s>`.
    Cavity,
    /// Single-mode sums for `<b^†r b^s>`.
    Drive,
    /// Generating-polynomial extraction, valid for every order.
    Generalized,
}

impl Route {
    /// Single-mode route when the order allows it, generalized otherwise.
    pub fn preferred(order: MomentOrder) -> Route {
        if order.is_cavity_only() {
            Route::Cavity
        } else if order.is_drive_only() {
            Route::Drive
        } else {
            Route::Generalized
        }
    }
}

/// Closed-form moment evaluator for one parameter set.
///
/// Kernels are built lazily per `(route, order)` and shared between threads.
#[derive(Debug)]
pub struct AnalyticModel {
    params: ModelParams,
    fields: InitialFields,
    trunc: Truncation,
    values: BaseValues,
    kernels: RwLock<HashMap<(Route, MomentOrder), Arc<MomentKernel>>>,
}

impl Clone for AnalyticModel {
    fn clone(&self) -> Self {
        Self::new(self.params, self.fields, self.trunc)
    }
}

impl AnalyticModel {
    pub fn new(params: ModelParams, fields: InitialFields, trunc: Truncation) -> Self {
        Self {
            values: BaseValues::new(&params, &fields),
            params,
            fields,
            trunc,
            kernels: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }
    pub fn fields(&self) -> &InitialFields {
        &self.fields
    }
    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn kernel(&self, route: Route, order: MomentOrder) -> Result<Arc<MomentKernel>> {
        let key = (route, order);
        if let Some(k) = self
            .kernels
            .read()
            .expect("kernel cache poisoned")
            .get(&key)
        {
            return Ok(Arc::clone(k));
        }
        let ell = self.trunc.ell();
        let kernel = match route {
            Route::Cavity if order.is_cavity_only() => {
                single_mode_kernel(Mode::A, order.p, order.q, ell, &self.values)?
            }
            Route::Drive if order.is_drive_only() => {
                single_mode_kernel(Mode::B, order.r, order.s, ell, &self.values)?
            }
            Route::Cavity | Route::Drive => {
                return Err(Error::InvalidParams(format!(
                    "order {order} is not a {route:?} moment"
                )))
            }
            Route::Generalized => generalized_kernel(order, ell, &self.values)?,
        };
        let kernel = Arc::new(kernel);
        self.kernels
            .write()
            .expect("kernel cache poisoned")
            .entry(key)
            .or_insert_with(|| Arc::clone(&kernel));
        Ok(kernel)
    }

    /// Evolution amplitudes up to the truncation, at one instant.
    pub fn evolution(&self, kappa_t: f64) -> EvolutionTable {
        EvolutionTable::new(&self.params, kappa_t, self.trunc.ell() + 1)
    }

    pub fn at(&self, kappa_t: f64) -> Snapshot<'_> {
        Snapshot {
            model: self,
            table: self.evolution(kappa_t),
        }
    }

    pub fn moment_via(&self, route: Route, order: MomentOrder, kappa_t: f64) -> Result<Complex64> {
        self.kernel(route, order)?
            .evaluate(&self.evolution(kappa_t))
    }

    pub fn cavity_moment(&self, r: u32, s: u32, kappa_t: f64) -> Result<Complex64> {
        self.moment_via(Route::Cavity, MomentOrder::cavity(r, s)?, kappa_t)
    }

    pub fn drive_moment(&self, r: u32, s: u32, kappa_t: f64) -> Result<Complex64> {
        self.moment_via(Route::Drive, MomentOrder::drive(r, s)?, kappa_t)
    }

    pub fn generalized_moment(&self, order: MomentOrder, kappa_t: f64) -> Result<Complex64> {
        self.moment_via(Route::Generalized, order, kappa_t)
    }

    /// Excited-state population `sum_m exp(-|nu_A|^2) |nu_A|^{2m}/m! |F_m|^2`.
    pub fn excited_population(&self, kappa_t: f64) -> f64 {
        let n = self.fields.nu_quasi().norm_sqr();
        let table = self.evolution(kappa_t);
        let mut weight = (-n).exp();
        let mut acc = crate::summation::NeumaierSum::new();
        for (m, f) in table.f.iter().enumerate() {
            if m > 0 {
                weight *= n / m as f64;
            }
            acc.add(weight * f.norm_sqr());
        }
        acc.value()
    }

    /// Moment series over a grid via the preferred route.
    pub fn series(
        &self,
        order: MomentOrder,
        grid: &TimeGrid,
        exec: Execution,
    ) -> Result<MomentSeries> {
        self.series_via(Route::preferred(order), order, grid, exec)
    }

    pub fn series_via(
        &self,
        route: Route,
        order: MomentOrder,
        grid: &TimeGrid,
        exec: Execution,
    ) -> Result<MomentSeries> {
        let kernel = self.kernel(route, order)?;
        let values = try_map_items(exec, grid.points(), |&t| {
            kernel.evaluate(&self.evolution(t))
        })?;
        Ok(MomentSeries {
            order,
            grid: grid.clone(),
            values,
            ell_used: self.trunc.ell(),
        })
    }

    /// Evaluate `f` on a snapshot at every grid point.
    pub fn sweep<T, F>(&self, grid: &TimeGrid, exec: Execution, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&Snapshot<'_>) -> Result<T> + Sync + Send,
    {
        try_map_items(exec, grid.points(), |&t| f(&self.at(t)))
    }
}

/// An [`AnalyticModel`] frozen at one time.
#[derive(Debug)]
pub struct Snapshot<'a> {
    model: &'a AnalyticModel,
    table: EvolutionTable,
}

impl Snapshot<'_> {
    pub fn moment_via(&self, route: Route, order: MomentOrder) -> Result<Complex64> {
        self.model.kernel(route, order)?.evaluate(&self.table)
    }
}

impl MomentSource for Snapshot<'_> {
    fn kappa_t(&self) -> f64 {
        self.table.kappa_t
    }

    fn moment(&self, order: MomentOrder) -> Result<Complex64> {
        self.moment_via(Route::preferred(order), order)
    }
}

/// One moment sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    pub order: MomentOrder,
    pub grid: TimeGrid,
    pub values: Vec<Complex64>,
    pub ell_used: usize,
}

/// `<a^†r(t) a^s(t)>` truncated at `trunc`.
pub fn cavity_moment(
    r: u32,
    s: u32,
    kappa_t: f64,
    params: &ModelParams,
    fields: &InitialFields,
    trunc: Truncation,
) -> Result<Complex64> {
    AnalyticModel::new(*params, *fields, trunc).cavity_moment(r, s, kappa_t)
}

/// `<b^†r(t) b^s(t)>` truncated at `trunc`.
pub fn drive_moment(
    r: u32,
    s: u32,
    kappa_t: f64,
    params: &ModelParams,
    fields: &InitialFields,
    trunc: Truncation,
) -> Result<Complex64> {
    AnalyticModel::new(*params, *fields, trunc).drive_moment(r, s, kappa_t)
}

/// `<a^†p a^q b^†r b^s>(t)` truncated at `trunc`.
pub fn generalized_moment(
    order: MomentOrder,
    kappa_t: f64,
    params: &ModelParams,
    fields: &InitialFields,
    trunc: Truncation,
) -> Result<Complex64> {
    AnalyticModel::new(*params, *fields, trunc).generalized_moment(order, kappa_t)
}
