//! Brute-force reference for every analytic moment.
//!
//! The product state `|e> |nu_A>_A |nu_B>_B` evolves inside the dressed
//! doublets `{|e, n>, |g, n+1>}` of the quasi-mode `A`; the spectator `B`
//! stays coherent. Moments are summed directly over the truncated Fock basis
//! and shared with the closed-form path only through `F_m` and `G_m`.
//!
//! [`dense`] provides a second reference that shares nothing: exact
//! diagonalisation of the interaction in the lab-mode Fock basis.

use num_complex::Complex64;

use crate::analytic::MomentOrder;
use crate::model::{evolution_f, evolution_g, InitialFields, ModelParams};
use crate::source::MomentSource;
use crate::special::generalized_binomial;
use crate::{Error, Result};
use num_traits::ToPrimitive;

pub mod dense;

/// Default quasi-mode Fock cutoff.
pub const DEFAULT_CUTOFF: usize = 128;
/// Largest Poisson probability allowed above the cutoff.
pub const TAIL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DressedState {
    cutoff: usize,
    kappa_t: f64,
    eps_a: f64,
    eps_b: f64,
    nu_spectator: Complex64,
    /// Poisson amplitudes `c_n` of `|nu_A>`.
    pub c_n: Vec<Complex64>,
    /// Coefficient of `|e, n>`.
    pub amp_e: Vec<Complex64>,
    /// Coefficient of `|g, n+1>`.
    pub amp_g: Vec<Complex64>,
}

fn poisson_amplitudes(nu: Complex64, cutoff: usize) -> (Vec<Complex64>, f64) {
    let mut c = Vec::with_capacity(cutoff + 1);
    let mut current = Complex64::new((-0.5 * nu.norm_sqr()).exp(), 0.0);
    c.push(current);
    for n in 1..=cutoff {
        current *= nu / (n as f64).sqrt();
        c.push(current);
    }
    // direct tail sum above the cutoff
    let mut tail = 0.0;
    let mut n = cutoff + 1;
    let mut term = current.norm_sqr();
    loop {
        term *= nu.norm_sqr() / n as f64;
        tail += term;
        if term <= tail * 1e-17 || term == 0.0 || n > cutoff + 100_000 {
            break;
        }
        n += 1;
    }
    (c, tail)
}

/// Evolve `|e> |nu_A, nu_B>` to `kappa_t`, keeping Fock levels `0..=cutoff`.
pub fn evolve(
    fields: &InitialFields,
    params: &ModelParams,
    kappa_t: f64,
    cutoff: usize,
) -> Result<DressedState> {
    if cutoff == 0 {
        return Err(Error::CutoffTooSmall { cutoff, tail: 1.0 });
    }
    let (c_n, tail) = poisson_amplitudes(fields.nu_quasi(), cutoff);
    if tail >= TAIL_TOLERANCE {
        return Err(Error::CutoffTooSmall { cutoff, tail });
    }
    let amp_e = c_n
        .iter()
        .enumerate()
        .map(|(n, c)| c * evolution_f(params, n, kappa_t))
        .collect();
    let amp_g = c_n
        .iter()
        .enumerate()
        .map(|(n, c)| c * evolution_g(params, n, kappa_t))
        .collect();
    Ok(DressedState {
        cutoff,
        kappa_t,
        eps_a: params.eps_a(),
        eps_b: params.eps_b(),
        nu_spectator: fields.nu_spectator(),
        c_n,
        amp_e,
        amp_g,
    })
}

/// [`evolve`] starting at `cutoff`, doubling until the tail check passes.
pub fn evolve_auto(
    fields: &InitialFields,
    params: &ModelParams,
    kappa_t: f64,
    cutoff: usize,
) -> Result<DressedState> {
    let mut cutoff = cutoff.max(1);
    loop {
        match evolve(fields, params, kappa_t, cutoff) {
            Err(Error::CutoffTooSmall { .. }) if cutoff < 1 << 20 => cutoff *= 2,
            other => return other,
        }
    }
}

/// `sqrt((l+j)! (l+k)!) / l!` for `l = 0..len`.
fn ladder_weights(j: usize, k: usize, len: usize) -> Vec<f64> {
    (0..len)
        .map(|l| {
            let up = |n: usize| ((l + 1)..=(l + n)).fold(1.0, |acc, x| acc * x as f64);
            (up(j) * up(k)).sqrt()
        })
        .collect()
}

impl DressedState {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_e
            .iter()
            .chain(&self.amp_g)
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Probability of the excited atomic state.
    pub fn excited_population(&self) -> f64 {
        self.amp_e.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<A^†j A^k>` with the atom traced out.
    pub fn quasimode_moment(&self, j: usize, k: usize) -> Complex64 {
        let top = self.cutoff;
        let mut acc = Complex64::new(0.0, 0.0);
        let reach = j.max(k);
        if reach <= top {
            // excited branch: Fock index n carries amp_e[n]
            let weights = ladder_weights(j, k, top - reach + 1);
            for (l, w) in weights.iter().enumerate() {
                acc += self.amp_e[l + j].conj() * self.amp_e[l + k] * w;
            }
        }
        // ground branch: Fock index n >= 1 carries amp_g[n - 1]
        let g_at = |n: usize| {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                self.amp_g[n - 1]
            }
        };
        if reach <= top + 1 {
            let weights = ladder_weights(j, k, top + 2 - reach);
            for (l, w) in weights.iter().enumerate() {
                acc += g_at(l + j).conj() * g_at(l + k) * w;
            }
        }
        acc
    }
}

/// Coefficients of `x^i` in `(alpha x + beta)^n`.
fn linear_power(alpha: Complex64, beta: Complex64, n: u32) -> Vec<Complex64> {
    (0..=n)
        .map(|i| {
            let binom = generalized_binomial(i64::from(n), i).to_f64().unwrap();
            alpha.powu(i) * beta.powu(n - i) * binom
        })
        .collect()
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `<a^†p a^q b^†r b^s>` by the binomial split `a = eps_a A - eps_b B`,
/// `b = eps_b A + eps_a B` with `B` in its coherent state.
pub fn oracle_generalized_moment(state: &DressedState, order: MomentOrder) -> Complex64 {
    let (ea, eb) = (
        Complex64::new(state.eps_a, 0.0),
        Complex64::new(state.eps_b, 0.0),
    );
    let nu_b = state.nu_spectator;
    // creators in powers of A^†, annihilators in powers of A
    let creators = poly_mul(
        &linear_power(ea, -eb * nu_b.conj(), order.p),
        &linear_power(eb, ea * nu_b.conj(), order.r),
    );
    let annihilators = poly_mul(
        &linear_power(ea, -eb * nu_b, order.q),
        &linear_power(eb, ea * nu_b, order.s),
    );
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, cj) in creators.iter().enumerate() {
        for (k, dk) in annihilators.iter().enumerate() {
            if *cj == Complex64::new(0.0, 0.0) || *dk == Complex64::new(0.0, 0.0) {
                continue;
            }
            acc += cj * dk * state.quasimode_moment(j, k);
        }
    }
    acc
}

impl MomentSource for DressedState {
    fn kappa_t(&self) -> f64 {
        self.kappa_t
    }

    fn moment(&self, order: MomentOrder) -> Result<Complex64> {
        Ok(oracle_generalized_moment(self, order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fig2(delta: f64) -> (ModelParams, InitialFields) {
        let p = ModelParams::with_relative_detuning(3.0, 1.0, delta).unwrap();
        let f = InitialFields::new(&p, Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
        (p, f)
    }

    #[test]
    fn initial_state_is_undisturbed() {
        let (p, f) = fig2(6.0);
        let s = evolve(&f, &p, 0.0, DEFAULT_CUTOFF).unwrap();
        for n in 0..=s.cutoff() {
            assert_eq!(s.amp_e[n], s.c_n[n]);
            assert_eq!(s.amp_g[n].norm(), 0.0);
        }
        assert_relative_eq!(s.quasimode_moment(0, 0).re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(
            (s.quasimode_moment(0, 1) - f.nu_quasi()).norm(),
            0.0,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            s.quasimode_moment(1, 1).re,
            f.nu_quasi().norm_sqr(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn vacuum_populates_only_ground_doublet() {
        let (p, _) = fig2(6.0);
        let vac = InitialFields::new(&p, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let s = evolve(&vac, &p, 2.3, 8).unwrap();
        assert_relative_eq!(
            (s.amp_e[0] - evolution_f(&p, 0, 2.3)).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert!(s.amp_e[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn norm_is_preserved() {
        let (p, f) = fig2(6.0);
        for t in [0.0, 0.7, 13.0, 49.0] {
            let s = evolve(&f, &p, t, DEFAULT_CUTOFF).unwrap();
            assert_relative_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn cutoff_check() {
        let (p, f) = fig2(0.0);
        assert!(matches!(
            evolve(&f, &p, 1.0, 4),
            Err(Error::CutoffTooSmall { cutoff: 4, .. })
        ));
        let s = evolve_auto(&f, &p, 1.0, 4).unwrap();
        assert!(s.cutoff() > 4);
    }

    #[test]
    fn product_state_cross_moment() {
        let (p, f) = fig2(0.0);
        let s = evolve(&f, &p, 0.0, DEFAULT_CUTOFF).unwrap();
        let o = MomentOrder::new(1, 0, 0, 1).unwrap();
        let got = oracle_generalized_moment(&s, o);
        assert_relative_eq!(
            (got - f.nu_a().conj() * f.nu_b()).norm(),
            0.0,
            epsilon = 1e-13
        );
        let one = oracle_generalized_moment(&s, MomentOrder::new(0, 0, 0, 0).unwrap());
        assert_relative_eq!(one.re, 1.0, epsilon = 1e-14);
    }
}
