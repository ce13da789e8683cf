//! Couplings, initial coherent amplitudes, the quasi-mode rotation and the
//! per-Fock-level evolution amplitudes `F_m`, `G_m`.
//!
//! Times are dimensionless `kappa_eff * t` throughout. The quasi-mode pair is
//! `A = eps_a a + eps_b b`, `B = eps_a b - eps_b a`, a rotation of the lab
//! modes with unit determinant, so `a = eps_a A - eps_b B` and
//! `b = eps_b A + eps_a B`.

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    kappa_a: f64,
    kappa_b: f64,
    kappa_eff: f64,
    eps_a: f64,
    eps_b: f64,
    delta: f64,
}

impl ModelParams {
    /// Couplings and detuning in the same (arbitrary) frequency unit.
    pub fn new(kappa_a: f64, kappa_b: f64, delta: f64) -> Result<Self> {
        if !(kappa_a.is_finite() && kappa_b.is_finite() && delta.is_finite()) {
            return Err(Error::InvalidParams(
                "non-finite coupling or detuning".into(),
            ));
        }
        if kappa_a < 0.0 || kappa_b < 0.0 {
            return Err(Error::InvalidParams(format!(
                "couplings must be non-negative, got kappa_a={kappa_a}, kappa_b={kappa_b}"
            )));
        }
        let kappa_eff = kappa_a.hypot(kappa_b);
        if kappa_eff <= 0.0 {
            return Err(Error::InvalidParams("kappa_eff must be positive".into()));
        }
        Ok(Self {
            kappa_a,
            kappa_b,
            kappa_eff,
            eps_a: kappa_a / kappa_eff,
            eps_b: kappa_b / kappa_eff,
            delta,
        })
    }

    /// Same as [`ModelParams::new`] with the detuning given in units of
    /// `kappa_eff`.
    pub fn with_relative_detuning(
        kappa_a: f64,
        kappa_b: f64,
        delta_over_kappa_eff: f64,
    ) -> Result<Self> {
        let kappa_eff = kappa_a.hypot(kappa_b);
        Self::new(kappa_a, kappa_b, delta_over_kappa_eff * kappa_eff)
    }

    pub fn kappa_a(&self) -> f64 {
        self.kappa_a
    }
    pub fn kappa_b(&self) -> f64 {
        self.kappa_b
    }
    pub fn kappa_eff(&self) -> f64 {
        self.kappa_eff
    }
    pub fn eps_a(&self) -> f64 {
        self.eps_a
    }
    pub fn eps_b(&self) -> f64 {
        self.eps_b
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn delta_over_kappa_eff(&self) -> f64 {
        self.delta / self.kappa_eff
    }
}

/// Coherent amplitudes of the cavity (`nu_a`) and driving (`nu_b`) fields,
/// together with their quasi-mode images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialFields {
    nu_a: Complex64,
    nu_b: Complex64,
    nu_big_a: Complex64,
    nu_big_b: Complex64,
}

impl InitialFields {
    pub fn new(params: &ModelParams, nu_a: Complex64, nu_b: Complex64) -> Self {
        let (ea, eb) = (params.eps_a(), params.eps_b());
        Self {
            nu_a,
            nu_b,
            nu_big_a: nu_a * ea + nu_b * eb,
            nu_big_b: nu_b * ea - nu_a * eb,
        }
    }

    pub fn nu_a(&self) -> Complex64 {
        self.nu_a
    }
    pub fn nu_b(&self) -> Complex64 {
        self.nu_b
    }
    /// Amplitude of the coupled quasi-mode `A`.
    pub fn nu_quasi(&self) -> Complex64 {
        self.nu_big_a
    }
    /// Amplitude of the spectator mode `B`.
    pub fn nu_spectator(&self) -> Complex64 {
        self.nu_big_b
    }
}

/// Strictly increasing, non-negative `kappa_eff * t` sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    points: Vec<f64>,
}

impl TimeGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid has no points".into()));
        }
        if points.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("non-finite time".into()));
        }
        if points[0] < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "first point {} is negative",
                points[0]
            )));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(
                "points must be strictly increasing".into(),
            ));
        }
        Ok(Self { points })
    }

    /// `count` evenly spaced points on `[0, t_max]`, endpoints included.
    pub fn linspace(t_max: f64, count: usize) -> Result<Self> {
        match count {
            0 => Err(Error::InvalidGrid("count must be positive".into())),
            1 => Self::new(vec![0.0]),
            _ => {
                if t_max.is_nan() || t_max <= 0.0 {
                    return Err(Error::InvalidGrid(format!(
                        "t_max must be positive, got {t_max}"
                    )));
                }
                let step = t_max / (count - 1) as f64;
                let mut pts: Vec<f64> = (0..count).map(|i| i as f64 * step).collect();
                pts[count - 1] = t_max;
                Self::new(pts)
            }
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// `(Omega_m, Delta_m)` in the frequency unit of `params`.
pub fn rabi_frequencies(params: &ModelParams, m: usize) -> (f64, f64) {
    let omega = 2.0 * params.kappa_eff() * ((m + 1) as f64).sqrt();
    (omega, params.delta().hypot(omega))
}

fn half_phase(params: &ModelParams, m: usize, kappa_t: f64) -> (f64, f64, f64) {
    let (omega, big_delta) = rabi_frequencies(params, m);
    // Delta_m t / 2 with t = kappa_t / kappa_eff
    let phase = 0.5 * big_delta * kappa_t / params.kappa_eff();
    (omega, big_delta, phase)
}

/// `F_m(t)`: amplitude of `|e, m>` after evolving `|e, m>`.
pub fn evolution_f(params: &ModelParams, m: usize, kappa_t: f64) -> Complex64 {
    let (_, big_delta, phase) = half_phase(params, m, kappa_t);
    Complex64::new(phase.cos(), -(params.delta() / big_delta) * phase.sin())
}

/// `G_m(t)`: amplitude of `|g, m+1>` after evolving `|e, m>`.
pub fn evolution_g(params: &ModelParams, m: usize, kappa_t: f64) -> Complex64 {
    let (omega, big_delta, phase) = half_phase(params, m, kappa_t);
    Complex64::new(0.0, -(omega / big_delta) * phase.sin())
}

/// `F_m` and `G_m` for `m = 0..len` at one instant.
#[derive(Debug, Clone)]
pub struct EvolutionTable {
    pub kappa_t: f64,
    pub f: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

impl EvolutionTable {
    pub fn new(params: &ModelParams, kappa_t: f64, len: usize) -> Self {
        let (f, g) = (0..len)
            .map(|m| {
                (
                    evolution_f(params, m, kappa_t),
                    evolution_g(params, m, kappa_t),
                )
            })
            .unzip();
        Self { kappa_t, f, g }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rabi_examples() {
        let p = ModelParams::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(rabi_frequencies(&p, 0), (2.0, 2.0));

        let p = ModelParams::new(1.0, 0.0, 6.0).unwrap();
        let (o, d) = rabi_frequencies(&p, 0);
        assert_eq!(o, 2.0);
        assert_relative_eq!(d, 40f64.sqrt(), max_relative = 1e-15);

        // kappa_eff = sqrt(10)
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        let (o, d) = rabi_frequencies(&p, 3);
        assert_relative_eq!(o, 4.0 * 10f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(d, 4.0 * 10f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn evolution_at_origin() {
        let p = ModelParams::with_relative_detuning(3.0, 1.0, 6.0).unwrap();
        for m in 0..20 {
            assert_eq!(evolution_f(&p, m, 0.0), Complex64::new(1.0, 0.0));
            assert_eq!(evolution_g(&p, m, 0.0).norm(), 0.0);
        }
    }

    #[test]
    fn resonant_f_is_real_cosine() {
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        for m in 0..10 {
            for &tau in &[0.3, 1.0, 7.5] {
                let f = evolution_f(&p, m, tau);
                assert_eq!(f.im, 0.0);
                assert_relative_eq!(f.re, (((m + 1) as f64).sqrt() * tau).cos(), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn detuned_unitarity_example() {
        let p = ModelParams::with_relative_detuning(1.0, 0.0, 6.0).unwrap();
        let (f, g) = (evolution_f(&p, 0, 1.0), evolution_g(&p, 0, 1.0));
        assert_relative_eq!(f.norm_sqr() + g.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn eps_normalised() {
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(p.kappa_eff().powi(2), 10.0, max_relative = 1e-12);
        assert_relative_eq!(p.eps_a().powi(2) + p.eps_b().powi(2), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(TimeGrid::new(vec![]).is_err());
        assert!(TimeGrid::new(vec![-1.0, 0.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 0.0]).is_err());
        let g = TimeGrid::linspace(50.0, 500).unwrap();
        assert_eq!(g.count(), 500);
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(g.points()[499], 50.0);
    }

    #[test]
    fn spectator_sign_convention() {
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        let f = InitialFields::new(&p, Complex64::new(1.0, 0.5), Complex64::new(2.0, -0.3));
        let (ea, eb) = (p.eps_a(), p.eps_b());
        // eps_b nu_a - eps_a nu_b = -nu_B
        let w = f.nu_a() * eb - f.nu_b() * ea;
        assert_relative_eq!((w + f.nu_spectator()).norm(), 0.0, epsilon = 1e-15);
        let before = f.nu_a().norm_sqr() + f.nu_b().norm_sqr();
        let after = f.nu_quasi().norm_sqr() + f.nu_spectator().norm_sqr();
        assert_relative_eq!(before, after, max_relative = 1e-12);
    }
}
