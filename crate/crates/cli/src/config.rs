use std::fmt;
use std::path::Path;

use driven_jcm::analytic::MAX_TOTAL_ORDER;
use driven_jcm::observables::GAMMA_LABELS;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Moments,
    Squeezing,
    Epr,
    Sv,
    OracleCompare,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Moments => "moments",
            Task::Squeezing => "squeezing",
            Task::Epr => "epr",
            Task::Sv => "sv",
            Task::OracleCompare => "oracle-compare",
        }
    }

    pub fn parse(name: &str) -> Option<Task> {
        [
            Task::Moments,
            Task::Squeezing,
            Task::Epr,
            Task::Sv,
            Task::OracleCompare,
        ]
        .into_iter()
        .find(|t| t.name() == name)
    }
}

/// A complex amplitude, written either as `{"re", "im"}`, `{"modulus",
/// "phase"}`, or a bare real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Cartesian {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    Polar {
        modulus: f64,
        #[serde(default)]
        phase: f64,
    },
}

impl Amplitude {
    pub fn value(self) -> Complex64 {
        match self {
            Amplitude::Real(x) => Complex64::new(x, 0.0),
            Amplitude::Cartesian { re, im } => Complex64::new(re, im),
            Amplitude::Polar { modulus, phase } => Complex64::from_polar(modulus, phase),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "defaults::kappa_a")]
    pub kappa_a: f64,
    #[serde(default = "defaults::kappa_b")]
    pub kappa_b: f64,
    #[serde(default)]
    pub delta_over_kappa_eff: f64,
    #[serde(default = "defaults::nu_a")]
    pub nu_a: Amplitude,
    #[serde(default = "defaults::nu_b")]
    pub nu_b: Amplitude,
    #[serde(default = "defaults::ell")]
    pub ell: usize,
    #[serde(default = "defaults::cutoff")]
    pub cutoff: usize,
    #[serde(default = "defaults::t_max")]
    pub t_max: f64,
    #[serde(default = "defaults::n_points")]
    pub n_points: usize,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub moment_orders: Vec<[u32; 4]>,
    /// Principal minors of the 5x5 partial-transpose matrix, as index lists.
    #[serde(default)]
    pub minors: Vec<Vec<usize>>,
}

mod defaults {
    use super::Amplitude;

    pub fn kappa_a() -> f64 {
        3.0
    }
    pub fn kappa_b() -> f64 {
        1.0
    }
    pub fn nu_a() -> Amplitude {
        Amplitude::Real(1.0)
    }
    pub fn nu_b() -> Amplitude {
        Amplitude::Real(2.0)
    }
    pub fn ell() -> usize {
        60
    }
    pub fn cutoff() -> usize {
        128
    }
    pub fn t_max() -> f64 {
        50.0
    }
    pub fn n_points() -> usize {
        500
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults deserialize")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn field(name: &str, msg: impl fmt::Display) -> ConfigError {
    ConfigError(format!("field `{name}`: {msg}"))
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text)
            .map_err(|e| ConfigError(format!("{origin}:{}:{}: {e}", e.line(), e.column())))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [("kappa_a", self.kappa_a), ("kappa_b", self.kappa_b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(field(name, format!("must be a finite number > 0, got {v}")));
            }
        }
        if !self.delta_over_kappa_eff.is_finite() {
            return Err(field("delta_over_kappa_eff", "must be finite"));
        }
        for (name, a) in [("nu_a", self.nu_a), ("nu_b", self.nu_b)] {
            let v = a.value();
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(field(name, "must be finite"));
            }
            if let Amplitude::Polar { modulus, .. } = a {
                if modulus < 0.0 {
                    return Err(field(name, "modulus must be >= 0"));
                }
            }
        }
        if self.ell == 0 {
            return Err(field("ell", "must be >= 1"));
        }
        if self.cutoff == 0 {
            return Err(field("cutoff", "must be >= 1"));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(field(
                "t_max",
                format!("must be a finite number > 0, got {}", self.t_max),
            ));
        }
        if self.n_points < 2 {
            return Err(field("n_points", "must be >= 2"));
        }
        if self.tasks.is_empty() {
            return Err(field("tasks", "at least one task is required"));
        }
        if self.tasks.contains(&Task::Moments) && self.moment_orders.is_empty() {
            return Err(field(
                "moment_orders",
                "required when tasks include `moments`",
            ));
        }
        for (i, o) in self.moment_orders.iter().enumerate() {
            if o.iter().sum::<u32>() > MAX_TOTAL_ORDER {
                return Err(field(
                    &format!("moment_orders[{i}]"),
                    format!(
                        "total order {} exceeds {MAX_TOTAL_ORDER}",
                        o.iter().sum::<u32>()
                    ),
                ));
            }
        }
        for (i, sel) in self.minors.iter().enumerate() {
            let ok = !sel.is_empty()
                && sel.iter().all(|&k| k < GAMMA_LABELS.len())
                && sel.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(field(
                    &format!("minors[{i}]"),
                    "need strictly increasing indices in 0..5 (1, a, a+, b+, b)",
                ));
            }
        }
        Ok(())
    }
}
