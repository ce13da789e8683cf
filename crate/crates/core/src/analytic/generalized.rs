//! Two-mode moments `<a^†p a^q b^†r b^s>` by coefficient extraction.
//!
//! After differentiating the two-mode characteristic function, the moment
//! weights are the Taylor coefficients of
//!
//! ```text
//! J(u, v) = (eps_a nu_A* v - eps_b nu_B*)^p (eps_a u / nu_A* - eps_b nu_B)^q
//!         * (eps_b nu_A* v + eps_a nu_B*)^r (eps_b u / nu_A* + eps_a nu_B)^s
//!         * exp(u v)
//! ```
//!
//! The four brackets are expanded exactly as a polynomial in `(u, v)` with
//! monomial coefficients; `exp(uv)` only contributes its `(uv)^l / l!` term
//! with `l = m - deg_u = m' - deg_v`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::kernel::MomentKernel;
use super::monomial::{Base, BaseValues, MonomialSum, MonomialTerm};
use super::single_mode::{assemble, coeff_c_term};
use super::MomentOrder;
use crate::model::InitialFields;
use crate::model::ModelParams;
use crate::special::{factorial, generalized_binomial};
use crate::Result;
use num_traits::ToPrimitive;

/// Bracket polynomial of `J` without the `exp(uv)` factor, keyed by
/// `(deg_u, deg_v)`.
#[derive(Debug, Clone)]
pub struct GeneratingPolynomial {
    terms: BTreeMap<(usize, usize), MonomialSum>,
}

type Linear = [(usize, usize, MonomialTerm); 2];

fn expand_power(form: &Linear, n: u32) -> BTreeMap<(usize, usize), MonomialSum> {
    let mut out: BTreeMap<(usize, usize), MonomialSum> = BTreeMap::new();
    let (hi, lo) = (form[0], form[1]);
    for i in 0..=n {
        let binom = generalized_binomial(i64::from(n), i).to_f64().unwrap();
        let term = (hi.2.powi(i as i32) * lo.2.powi((n - i) as i32)).scaled(binom);
        let key = (
            hi.0 * i as usize + lo.0 * (n - i) as usize,
            hi.1 * i as usize + lo.1 * (n - i) as usize,
        );
        out.entry(key).or_default().push(term);
    }
    out
}

fn multiply(
    a: &BTreeMap<(usize, usize), MonomialSum>,
    b: &BTreeMap<(usize, usize), MonomialSum>,
) -> BTreeMap<(usize, usize), MonomialSum> {
    let mut out: BTreeMap<(usize, usize), MonomialSum> = BTreeMap::new();
    for (&(ua, va), sa) in a {
        for (&(ub, vb), sb) in b {
            let slot = out.entry((ua + ub, va + vb)).or_default();
            for ta in sa.terms() {
                for tb in sb.terms() {
                    slot.push(*ta * *tb);
                }
            }
        }
    }
    out
}

impl GeneratingPolynomial {
    pub fn new(order: MomentOrder) -> Self {
        use Base::*;
        let t = MonomialTerm::power;
        let forms: [(Linear, u32); 4] = [
            (
                [
                    (0, 1, t(EpsA, 1) * t(NuAConj, 1)),
                    (0, 0, (t(EpsB, 1) * t(NuBConj, 1)).scaled(-1.0)),
                ],
                order.p,
            ),
            (
                [
                    (1, 0, t(EpsA, 1) * t(NuAConj, -1)),
                    (0, 0, (t(EpsB, 1) * t(NuB, 1)).scaled(-1.0)),
                ],
                order.q,
            ),
            (
                [
                    (0, 1, t(EpsB, 1) * t(NuAConj, 1)),
                    (0, 0, t(EpsA, 1) * t(NuBConj, 1)),
                ],
                order.r,
            ),
            (
                [
                    (1, 0, t(EpsB, 1) * t(NuAConj, -1)),
                    (0, 0, t(EpsA, 1) * t(NuB, 1)),
                ],
                order.s,
            ),
        ];
        let mut acc: BTreeMap<(usize, usize), MonomialSum> = BTreeMap::new();
        acc.entry((0, 0)).or_default().push(MonomialTerm::ONE);
        for (form, n) in &forms {
            acc = multiply(&acc, &expand_power(form, *n));
        }
        Self { terms: acc }
    }

    /// `I_{m,m'} = (1/m!) d^m_u d^m'_v J |_{0} = m'! [u^m v^m'] J`, symbolic.
    pub fn extract(&self, m: usize, m_prime: usize) -> MonomialSum {
        let mut out = MonomialSum::zero();
        let scale = factorial(m_prime);
        for (&(du, dv), sum) in &self.terms {
            if du > m || dv > m_prime || m - du != m_prime - dv {
                continue;
            }
            let l = m - du;
            for t in sum.terms() {
                out.push(t.scaled(scale / factorial(l)));
            }
        }
        out
    }
}

/// Numeric `I^{(p,q,r,s)}_{m,m'}` at `alpha_a = nu_a`, `alpha_b = nu_b`.
///
/// Fails with an unresolved singularity when `nu_A = 0` and a `u` power is
/// needed; inside the moment sums that factor is cancelled by the Poisson
/// weight.
pub fn poly_j_coefficient(
    m: usize,
    m_prime: usize,
    order: MomentOrder,
    params: &ModelParams,
    fields: &InitialFields,
) -> Result<Complex64> {
    let values = BaseValues::new(params, fields);
    GeneratingPolynomial::new(order)
        .extract(m, m_prime)
        .evaluate(&values)
}

pub(crate) fn generalized_kernel(
    order: MomentOrder,
    ell: usize,
    values: &BaseValues,
) -> Result<MomentKernel> {
    let poly = GeneratingPolynomial::new(order);
    let weight = (-values.get(Base::NuA).norm_sqr()).exp();
    MomentKernel::build(order, ell, |m, mp| {
        let ff = assemble(
            weight,
            coeff_c_term(1, 1, m, mp)?,
            &poly.extract(m, mp),
            values,
        )?;
        let sqrt_levels = (((m + 1) * (mp + 1)) as f64).sqrt();
        let gg = assemble(
            weight * sqrt_levels,
            coeff_c_term(2, 1, m + 1, mp + 1)?,
            &poly.extract(m + 1, mp + 1),
            values,
        )?;
        Ok((ff, gg))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn setup() -> (ModelParams, InitialFields) {
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        let f = InitialFields::new(&p, Complex64::new(1.0, 0.2), Complex64::new(2.0, -0.4));
        (p, f)
    }

    #[test]
    fn constant_term_of_trivial_order() {
        let (p, f) = setup();
        let o = MomentOrder::new(0, 0, 0, 0).unwrap();
        assert_eq!(
            poly_j_coefficient(0, 0, o, &p, &f).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        // coefficient of uv in exp(uv), times 1!/1!
        assert_relative_eq!(
            poly_j_coefficient(1, 1, o, &p, &f).unwrap().re,
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(
            poly_j_coefficient(1, 0, o, &p, &f).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn first_bracket_at_origin() {
        let (p, f) = setup();
        let o = MomentOrder::new(1, 0, 0, 0).unwrap();
        let expected = (f.nu_a() * p.eps_b() - f.nu_b() * p.eps_a()).conj() * p.eps_b();
        let got = poly_j_coefficient(0, 0, o, &p, &f).unwrap();
        assert_relative_eq!((got - expected).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn bracket_expansion_matches_direct_product() {
        // evaluate J(u, v) at a sample (u, v) directly and through the expansion
        let (p, f) = setup();
        let o = MomentOrder::new(2, 1, 1, 2).unwrap();
        let poly = GeneratingPolynomial::new(o);
        let values = BaseValues::new(&p, &f);
        let (u, v) = (Complex64::new(0.3, -0.1), Complex64::new(-0.2, 0.25));
        let mut expanded = Complex64::new(0.0, 0.0);
        for (&(du, dv), sum) in &poly.terms {
            expanded += sum.evaluate(&values).unwrap() * u.powi(du as i32) * v.powi(dv as i32);
        }
        let (ea, eb) = (p.eps_a(), p.eps_b());
        let na = f.nu_quasi().conj();
        let w = f.nu_a() * eb - f.nu_b() * ea;
        let direct = (na * v * ea + w.conj() * eb).powi(2)
            * (u * ea / na + w * eb)
            * (na * v * eb - w.conj() * ea)
            * (u * eb / na - w * ea).powi(2);
        assert_relative_eq!((expanded - direct).norm(), 0.0, epsilon = 1e-13);
    }
}
