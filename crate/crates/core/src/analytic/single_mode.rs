//! Single-mode moments `<c^†r c^s>` for `c = a` or `c = b`.
//!
//! Each summand of the Fock double sum is a product of four symbolic factors:
//! the Poisson weight `C`, the mode prefactor (ratio powers of the quasi-mode
//! and spectator amplitudes), a finite Laguerre sum, and for the lower block
//! an extra inverse-ratio power. For the cavity mode the spectator projection
//! is `X = -eps_b nu_B` with weight `eps_a`; for the driving mode it is
//! `X = eps_a nu_B` with weight `eps_b`.

use num_complex::Complex64;

use super::kernel::MomentKernel;
use super::monomial::{Base, BaseValues, MonomialSum, MonomialTerm};
use super::{Mode, MomentOrder};
use crate::model::InitialFields;
use crate::special::{factorial, laguerre_at_zero_f64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
struct ModeBases {
    weight: Base,
    mix: Base,
    sign: f64,
}

fn mode_bases(mode: Mode) -> ModeBases {
    match mode {
        Mode::A => ModeBases {
            weight: Base::EpsA,
            mix: Base::EpsB,
            sign: -1.0,
        },
        Mode::B => ModeBases {
            weight: Base::EpsB,
            mix: Base::EpsA,
            sign: 1.0,
        },
    }
}

/// `C^{ij}_{m,m'}` without the `exp(-|nu_A|^2)` factor.
pub(crate) fn coeff_c_term(i: u8, j: u8, m: usize, m_prime: usize) -> Result<MonomialTerm> {
    if !matches!((i, j), (1, 1) | (2, 1)) {
        return Err(Error::InvalidIndexPair { i, j });
    }
    let power = i32::from(j) - i32::from(i) + m as i32;
    let modulus = MonomialTerm::power(Base::NuA, power) * MonomialTerm::power(Base::NuAConj, power);
    Ok(modulus.scaled(1.0 / factorial(m_prime)))
}

/// Poisson-type weight `exp(-|nu_A|^2) |nu_A|^{2(j-i+m)} / m'!`.
///
/// Only `(i, j) = (1, 1)` and `(2, 1)` occur in the evolution kernel.
pub fn coeff_c(i: u8, j: u8, m: usize, m_prime: usize, fields: &InitialFields) -> Result<f64> {
    let term = coeff_c_term(i, j, m, m_prime)?;
    let nu = fields.nu_quasi();
    let n = term.exponent(Base::NuA);
    let modulus = nu.norm_sqr();
    let pow = if n == 0 {
        1.0
    } else if modulus == 0.0 {
        if n > 0 {
            0.0
        } else {
            return Err(Error::UnresolvedSingularity {
                base: Base::NuA.name(),
                exponent: n,
            });
        }
    } else {
        modulus.powi(n)
    };
    Ok((-modulus).exp() * pow * term.coefficient)
}

/// Mode prefactor with index difference `d = m' - m`:
/// `(X*)^r X^s (w nu_A* / X*)^d`.
fn prefactor(mode: Mode, r: u32, s: u32, d: i32) -> MonomialTerm {
    let mb = mode_bases(mode);
    let (r, s) = (r as i32, s as i32);
    let mut t = MonomialTerm::constant(mb.sign.powi(r + s - d));
    t = t * MonomialTerm::power(mb.mix, r + s - d);
    t = t * MonomialTerm::power(mb.weight, d);
    t = t * MonomialTerm::power(Base::NuAConj, d);
    t = t * MonomialTerm::power(Base::NuB, s);
    t * MonomialTerm::power(Base::NuBConj, r - d)
}

/// `(w / (eps_mix |nu_B|))^{2k}`.
fn inverse_ratio(mode: Mode, k: i32) -> MonomialTerm {
    let mb = mode_bases(mode);
    MonomialTerm::power(mb.weight, 2 * k)
        * MonomialTerm::power(mb.mix, -2 * k)
        * MonomialTerm::power(Base::NuB, -k)
        * MonomialTerm::power(Base::NuBConj, -k)
}

/// Finite Laguerre sum
/// `sum_{k=0}^{min(m, r, s-(m'-m))} k! L_k^{(m-k)}(0) L_k^{(r-k)}(0)
///  L_{m'-m+k}^{(s-m'+m-k)}(0) T^{(k)}`,
/// returned symbolically. The sum is empty when the upper limit is negative;
/// terms whose Laguerre degree `m'-m+k` is negative vanish.
pub fn aux_s(mode: Mode, m: usize, m_prime: usize, r: u32, s: u32) -> MonomialSum {
    let (m_i, mp_i) = (m as i64, m_prime as i64);
    let (r_i, s_i) = (i64::from(r), i64::from(s));
    let upper = m_i.min(r_i).min(s_i - (mp_i - m_i));
    let mut out = MonomialSum::zero();
    for k in 0..=upper.max(-1) {
        let degree = mp_i - m_i + k;
        if degree < 0 {
            continue;
        }
        let coefficient = factorial(k as usize)
            * laguerre_at_zero_f64(k as u32, m_i - k)
            * laguerre_at_zero_f64(k as u32, r_i - k)
            * laguerre_at_zero_f64(degree as u32, s_i - mp_i + m_i - k);
        out.push(inverse_ratio(mode, k as i32).scaled(coefficient));
    }
    out
}

pub(crate) fn assemble(
    scale: f64,
    factors: MonomialTerm,
    laguerre: &MonomialSum,
    values: &BaseValues,
) -> Result<Complex64> {
    let full = laguerre.times(factors);
    if let Some(bad) = full.terms().iter().find(|t| !t.is_regular()) {
        let (base, exponent) = Base::ALL
            .iter()
            .map(|&b| (b, bad.exponent(b)))
            .find(|&(_, e)| e < 0)
            .expect("irregular term has a negative exponent");
        return Err(Error::UnresolvedSingularity {
            base: base.name(),
            exponent,
        });
    }
    Ok(full.evaluate(values)? * scale)
}

/// Kernel of `<c^†r c^s>` for `c` selected by `mode`.
pub(crate) fn single_mode_kernel(
    mode: Mode,
    r: u32,
    s: u32,
    ell: usize,
    values: &BaseValues,
) -> Result<MomentKernel> {
    let order = match mode {
        Mode::A => MomentOrder::cavity(r, s)?,
        Mode::B => MomentOrder::drive(r, s)?,
    };
    let weight = (-values.get(Base::NuA).norm_sqr()).exp();

    MomentKernel::build(order, ell, |m, mp| {
        let d = mp as i32 - m as i32;
        let pre = prefactor(mode, r, s, d);
        let sqrt_levels = (((m + 1) * (mp + 1)) as f64).sqrt();
        use std::cmp::Ordering::*;
        let (ff, gg) = match m.cmp(&mp) {
            Equal => {
                let ff = assemble(
                    weight,
                    coeff_c_term(1, 1, m, m)? * pre,
                    &aux_s(mode, m, m, r, s),
                    values,
                )?;
                let gg = assemble(
                    weight * sqrt_levels,
                    coeff_c_term(2, 1, m + 1, m + 1)? * pre,
                    &aux_s(mode, m + 1, m + 1, r, s),
                    values,
                )?;
                (ff, gg)
            }
            Greater => {
                let pre = pre * inverse_ratio(mode, m as i32 - mp as i32);
                let ff = assemble(
                    weight,
                    coeff_c_term(1, 1, m, mp)? * pre,
                    &aux_s(mode, mp, m, r, s),
                    values,
                )?;
                let gg = assemble(
                    weight * sqrt_levels,
                    coeff_c_term(2, 1, m + 1, mp + 1)? * pre,
                    &aux_s(mode, mp + 1, m + 1, r, s),
                    values,
                )?;
                (ff, gg)
            }
            Less => {
                let ff = assemble(
                    weight,
                    coeff_c_term(1, 1, m, m)? * pre,
                    &aux_s(mode, m, mp, s, r),
                    values,
                )?;
                let gg = assemble(
                    weight * sqrt_levels,
                    coeff_c_term(2, 1, m + 1, m + 1)? * pre,
                    &aux_s(mode, m + 1, mp + 1, s, r),
                    values,
                )?;
                (ff, gg)
            }
        };
        Ok((ff, gg))
    })
}
