use std::collections::BTreeSet;

use driven_jcm::analytic::Snapshot;
use driven_jcm::observables::{
    epr_uncertainty, gamma_minor, quadrature_variance, sv_subdeterminant,
};
use driven_jcm::oracle;
use driven_jcm::parallel::try_map_items;
use driven_jcm::{
    AnalyticModel, Error, Execution, InitialFields, Mode, ModelParams, MomentOrder, MomentSource,
    TimeGrid, Truncation,
};

use crate::config::{RunConfig, Task};
use crate::table::{Table, Value};

/// Deviation above which `oracle-compare` fails the run.
pub const ORACLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug)]
pub enum RunError {
    Config(String),
    Numeric(String),
    Mismatch(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Numeric(_) => 2,
            RunError::Mismatch(_) => 3,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Numeric(m) => write!(f, "numerical failure: {m}"),
            RunError::Mismatch(m) => write!(f, "oracle mismatch: {m}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_)
            | Error::InvalidGrid(_)
            | Error::InvalidIndexPair { .. }
            | Error::OrderTooHigh { .. }
            | Error::InvalidTruncation(_)
            | Error::InvalidSelection(_) => RunError::Config(e.to_string()),
            _ => RunError::Numeric(e.to_string()),
        }
    }
}

pub struct Run {
    config: RunConfig,
    model: AnalyticModel,
    grid: TimeGrid,
    exec: Execution,
}

impl Run {
    pub fn new(config: RunConfig, exec: Execution) -> Result<Self, RunError> {
        let params = ModelParams::with_relative_detuning(
            config.kappa_a,
            config.kappa_b,
            config.delta_over_kappa_eff,
        )?;
        let fields = InitialFields::new(&params, config.nu_a.value(), config.nu_b.value());
        let model = AnalyticModel::new(params, fields, Truncation::new(config.ell)?);
        let grid = TimeGrid::linspace(config.t_max, config.n_points)?;
        Ok(Self {
            config,
            model,
            grid,
            exec,
        })
    }

    /// The task's table, plus a mismatch report for `oracle-compare` runs
    /// that exceed [`ORACLE_TOLERANCE`]. The table is returned either way so
    /// it can still be written.
    pub fn table(&self, task: Task) -> Result<(Table, Option<RunError>), RunError> {
        match task {
            Task::Moments => Ok((self.moments()?, None)),
            Task::Squeezing => Ok((self.squeezing()?, None)),
            Task::Epr => Ok((self.epr()?, None)),
            Task::Sv => Ok((self.sv()?, None)),
            Task::OracleCompare => self.oracle_compare(),
        }
    }

    fn sweep<F>(&self, f: F) -> Result<Vec<Vec<Vec<Value>>>, RunError>
    where
        F: Fn(&Snapshot<'_>) -> driven_jcm::Result<Vec<Vec<Value>>> + Sync + Send,
    {
        Ok(self.model.sweep(&self.grid, self.exec, f)?)
    }

    fn orders(&self) -> Result<Vec<MomentOrder>, RunError> {
        self.config
            .moment_orders
            .iter()
            .map(|&[p, q, r, s]| MomentOrder::new(p, q, r, s).map_err(RunError::from))
            .collect()
    }

    fn moments(&self) -> Result<Table, RunError> {
        let orders = self.orders()?;
        let rows = self.sweep(|snap| {
            orders
                .iter()
                .map(|&o| {
                    let v = snap.moment(o)?;
                    Ok(vec![
                        Value::Num(snap.kappa_t()),
                        Value::Int(o.p),
                        Value::Int(o.q),
                        Value::Int(o.r),
                        Value::Int(o.s),
                        Value::Num(v.re),
                        Value::Num(v.im),
                    ])
                })
                .collect()
        })?;
        Ok(Table::new(
            &["kappa_t", "p", "q", "r", "s", "re", "im"],
            rows.concat(),
        ))
    }

    fn squeezing(&self) -> Result<Table, RunError> {
        let rows = self.sweep(|snap| {
            [Mode::A, Mode::B]
                .into_iter()
                .map(|mode| {
                    let v = quadrature_variance(snap, mode)?;
                    Ok(vec![
                        Value::Num(snap.kappa_t()),
                        Value::Text(mode.label()),
                        Value::Num(v.v_q),
                        Value::Num(v.v_p),
                    ])
                })
                .collect()
        })?;
        Ok(Table::new(
            &["kappa_t", "mode", "v_q", "v_p"],
            rows.concat(),
        ))
    }

    fn epr(&self) -> Result<Table, RunError> {
        let rows = self.sweep(|snap| {
            let e = epr_uncertainty(snap)?;
            Ok(vec![[
                snap.kappa_t(),
                e.i_ab,
                e.cov_qq,
                e.cov_pp,
                e.mode_a.v_q,
                e.mode_a.v_p,
                e.mode_b.v_q,
                e.mode_b.v_p,
            ]
            .map(Value::Num)
            .to_vec()])
        })?;
        Ok(Table::new(
            &[
                "kappa_t", "I_ab", "cov_qq", "cov_pp", "v_q_a", "v_p_a", "v_q_b", "v_p_b",
            ],
            rows.concat(),
        ))
    }

    fn sv(&self) -> Result<Table, RunError> {
        let minors = &self.config.minors;
        let rows = self.sweep(|snap| {
            let mut row = vec![
                Value::Num(snap.kappa_t()),
                Value::Num(sv_subdeterminant(snap)?),
            ];
            for sel in minors {
                row.push(Value::Num(gamma_minor(snap, sel)?));
            }
            Ok(vec![row])
        })?;
        let mut header = vec!["kappa_t".to_string(), "S".to_string()];
        header.extend(minors.iter().map(|sel| {
            let idx: Vec<String> = sel.iter().map(|i| i.to_string()).collect();
            format!("gamma_{}", idx.join(""))
        }));
        Ok(Table::with_header(header, rows.concat()))
    }

    fn oracle_compare(&self) -> Result<(Table, Option<RunError>), RunError> {
        let mut orders: BTreeSet<(u32, u32, u32, u32)> = MomentOrder::all_up_to(4)
            .into_iter()
            .map(|o| (o.p, o.q, o.r, o.s))
            .collect();
        orders.extend(self.orders()?.into_iter().map(|o| (o.p, o.q, o.r, o.s)));
        let orders: Vec<MomentOrder> = orders
            .into_iter()
            .map(|(p, q, r, s)| MomentOrder { p, q, r, s })
            .collect();

        let params = *self.model.params();
        let fields = *self.model.fields();
        let cutoff = self.config.cutoff;
        let per_point = try_map_items(
            self.exec,
            self.grid.points(),
            |&t| -> Result<Vec<(f64, f64)>, RunError> {
                let state = oracle::evolve(&fields, &params, t, cutoff)?;
                let snap = self.model.at(t);
                orders
                    .iter()
                    .map(|&o| {
                        let reference = state.moment(o)?;
                        let diff = (snap.moment(o)? - reference).norm();
                        Ok((diff, diff / (1.0 + reference.norm())))
                    })
                    .collect()
            },
        )?;

        let mut rows = Vec::with_capacity(orders.len());
        let mut worst: Option<(f64, MomentOrder)> = None;
        for (k, &o) in orders.iter().enumerate() {
            let (abs, rel) = per_point
                .iter()
                .map(|devs| devs[k])
                .fold((0.0f64, 0.0f64), |acc, d| (acc.0.max(d.0), acc.1.max(d.1)));
            if worst.is_none_or(|(w, _)| rel > w) {
                worst = Some((rel, o));
            }
            rows.push(vec![
                Value::Int(o.p),
                Value::Int(o.q),
                Value::Int(o.r),
                Value::Int(o.s),
                Value::Num(abs),
                Value::Num(rel),
            ]);
        }
        let table = Table::new(&["p", "q", "r", "s", "max_abs_dev", "max_rel_dev"], rows);
        let mismatch = match worst {
            Some((rel, o)) if rel.is_nan() || rel >= ORACLE_TOLERANCE => Some(RunError::Mismatch(
                format!("order {o} deviates by {rel:e} (tolerance {ORACLE_TOLERANCE:e})"),
            )),
            _ => None,
        };
        Ok((table, mismatch))
    }
}
