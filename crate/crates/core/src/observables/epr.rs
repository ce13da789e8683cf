use num_complex::Complex64;

use crate::analytic::{Mode, MomentOrder};
use crate::source::MomentSource;
use crate::Result;

use super::{quadrature_variance, real_part, QuadratureVariances, REAL_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovariancePair {
    /// `Cov(Q_a, Q_b)`
    QQ,
    /// `Cov(P_a, P_b)`
    PP,
}

fn m(p: u32, q: u32, r: u32, s: u32) -> MomentOrder {
    MomentOrder { p, q, r, s }
}

/// `1/2 <{X_a, X_b}> - <X_a><X_b>`. The two modes commute, so the
/// anticommutator mean is `<X_a X_b>`.
pub fn covariance<S: MomentSource + ?Sized>(src: &S, pair: CovariancePair) -> Result<f64> {
    let ab = src.moment(m(0, 1, 0, 1))?; // <a b>
    let a_bdag = src.moment(m(0, 1, 1, 0))?; // <a b^+>
    let adag_b = src.moment(m(1, 0, 0, 1))?; // <a^+ b>
    let adag_bdag = src.moment(m(1, 0, 1, 0))?; // <a^+ b^+>
    let a = src.moment(m(0, 1, 0, 0))?;
    let b = src.moment(m(0, 0, 0, 1))?;
    let cov = match pair {
        CovariancePair::QQ => {
            let joint = (adag_bdag + adag_b + a_bdag + ab) * 0.5;
            joint - Complex64::new(2.0 * a.re * b.re, 0.0)
        }
        CovariancePair::PP => {
            let joint = -(adag_bdag - adag_b - a_bdag + ab) * 0.5;
            joint - Complex64::new(2.0 * a.im * b.im, 0.0)
        }
    };
    real_part(cov, "covariance", REAL_TOLERANCE)
}

/// EPR total variance with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprReport {
    pub kappa_t: f64,
    pub i_ab: f64,
    pub cov_qq: f64,
    pub cov_pp: f64,
    pub mode_a: QuadratureVariances,
    pub mode_b: QuadratureVariances,
}

impl EprReport {
    /// `I < 1` certifies entanglement for Gaussian statistics only.
    pub fn below_separable_bound(&self) -> bool {
        self.i_ab < 1.0
    }
}

/// Total variance of `(Q_a - Q_b)/sqrt2` and `(P_a + P_b)/sqrt2`.
pub fn epr_uncertainty<S: MomentSource + ?Sized>(src: &S) -> Result<EprReport> {
    let va = quadrature_variance(src, Mode::A)?;
    let vb = quadrature_variance(src, Mode::B)?;
    let cov_qq = covariance(src, CovariancePair::QQ)?;
    let cov_pp = covariance(src, CovariancePair::PP)?;
    let i_ab = 0.5 * (va.v_q + vb.v_q + va.v_p + vb.v_p - 2.0 * cov_qq + 2.0 * cov_pp);
    Ok(EprReport {
        kappa_t: src.kappa_t(),
        i_ab,
        cov_qq,
        cov_pp,
        mode_a: va,
        mode_b: vb,
    })
}
