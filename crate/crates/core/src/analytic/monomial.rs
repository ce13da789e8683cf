//! Exponent ledgers over the six symbolic bases of the closed-form sums.
//!
//! The auxiliary factors carry inverse powers of `|nu_B|`, `nu_A*` and the
//! mixing weights. Summands are multiplied symbolically and only evaluated
//! once the exponents have been combined, so removable singularities at
//! `nu_B = 0`, `nu_A = 0` or `eps_b = 0` never produce `0/0`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::model::{InitialFields, ModelParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    EpsA,
    EpsB,
    NuA,
    NuAConj,
    NuB,
    NuBConj,
}

impl Base {
    pub const ALL: [Base; 6] = [
        Base::EpsA,
        Base::EpsB,
        Base::NuA,
        Base::NuAConj,
        Base::NuB,
        Base::NuBConj,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::EpsA => "eps_a",
            Base::EpsB => "eps_b",
            Base::NuA => "nu_A",
            Base::NuAConj => "nu_A*",
            Base::NuB => "nu_B",
            Base::NuBConj => "nu_B*",
        }
    }
}

/// Numeric values of the bases for one parameter set.
#[derive(Debug, Clone, Copy)]
pub struct BaseValues([Complex64; 6]);

impl BaseValues {
    pub fn new(params: &ModelParams, fields: &InitialFields) -> Self {
        let nu_a = fields.nu_quasi();
        let nu_b = fields.nu_spectator();
        Self([
            Complex64::new(params.eps_a(), 0.0),
            Complex64::new(params.eps_b(), 0.0),
            nu_a,
            nu_a.conj(),
            nu_b,
            nu_b.conj(),
        ])
    }

    pub fn get(&self, base: Base) -> Complex64 {
        self.0[base.index()]
    }
}

/// `coefficient * prod_b base_b ^ exponent_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialTerm {
    pub coefficient: f64,
    pub exponents: [i32; 6],
}

impl MonomialTerm {
    pub const ONE: MonomialTerm = MonomialTerm {
        coefficient: 1.0,
        exponents: [0; 6],
    };

    pub fn constant(coefficient: f64) -> Self {
        Self {
            coefficient,
            exponents: [0; 6],
        }
    }

    pub fn power(base: Base, exponent: i32) -> Self {
        let mut exponents = [0; 6];
        exponents[base.index()] = exponent;
        Self {
            coefficient: 1.0,
            exponents,
        }
    }

    pub fn exponent(&self, base: Base) -> i32 {
        self.exponents[base.index()]
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.coefficient *= factor;
        self
    }

    /// Raise to an integer power (negative allowed).
    pub fn powi(&self, n: i32) -> Self {
        let mut exponents = self.exponents;
        for e in &mut exponents {
            *e *= n;
        }
        Self {
            coefficient: self.coefficient.powi(n),
            exponents,
        }
    }

    /// Whether every exponent is non-negative, i.e. the term is a polynomial
    /// in the bases.
    pub fn is_regular(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 0)
    }

    pub fn evaluate(&self, values: &BaseValues) -> Result<Complex64> {
        let mut acc = Complex64::new(self.coefficient, 0.0);
        if self.coefficient == 0.0 {
            return Ok(acc);
        }
        for base in Base::ALL {
            let e = self.exponent(base);
            if e == 0 {
                continue;
            }
            let v = values.get(base);
            if v == Complex64::new(0.0, 0.0) {
                if e > 0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                return Err(Error::UnresolvedSingularity {
                    base: base.name(),
                    exponent: e,
                });
            }
            acc *= v.powi(e);
        }
        Ok(acc)
    }
}

impl Mul for MonomialTerm {
    type Output = MonomialTerm;

    fn mul(self, rhs: Self) -> Self {
        let mut exponents = self.exponents;
        for (e, r) in exponents.iter_mut().zip(rhs.exponents) {
            *e += r;
        }
        MonomialTerm {
            coefficient: self.coefficient * rhs.coefficient,
            exponents,
        }
    }
}

/// Sum of monomials. Terms with identical exponents are merged on insert.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MonomialSum {
    terms: Vec<MonomialTerm>,
}

impl MonomialSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: MonomialTerm) {
        if term.coefficient == 0.0 {
            return;
        }
        match self
            .terms
            .iter_mut()
            .find(|t| t.exponents == term.exponents)
        {
            Some(t) => t.coefficient += term.coefficient,
            None => self.terms.push(term),
        }
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply every term by `factor`.
    pub fn times(&self, factor: MonomialTerm) -> MonomialSum {
        let mut out = MonomialSum::zero();
        for t in &self.terms {
            out.push(*t * factor);
        }
        out
    }

    pub fn evaluate(&self, values: &BaseValues) -> Result<Complex64> {
        self.terms
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, t| {
                Ok(acc + t.evaluate(values)?)
            })
    }
}

impl FromIterator<MonomialTerm> for MonomialSum {
    fn from_iter<I: IntoIterator<Item = MonomialTerm>>(iter: I) -> Self {
        let mut s = MonomialSum::zero();
        for t in iter {
            s.push(t);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(nu_a: Complex64, nu_b: Complex64) -> BaseValues {
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        BaseValues::new(&p, &InitialFields::new(&p, nu_a, nu_b))
    }

    #[test]
    fn cancelled_exponents_evaluate_at_zero_base() {
        let v = BaseValues([
            Complex64::new(0.9, 0.0),
            Complex64::new(0.3, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let t = MonomialTerm::power(Base::NuB, -2) * MonomialTerm::power(Base::NuB, 2);
        assert_eq!(t.evaluate(&v).unwrap(), Complex64::new(1.0, 0.0));
        let t = MonomialTerm::power(Base::NuB, -2) * MonomialTerm::power(Base::NuB, 3);
        assert_eq!(t.evaluate(&v).unwrap(), Complex64::new(0.0, 0.0));
        let t = MonomialTerm::power(Base::NuBConj, -1);
        assert!(matches!(
            t.evaluate(&v),
            Err(Error::UnresolvedSingularity {
                base: "nu_B*",
                exponent: -1
            })
        ));
    }

    #[test]
    fn merge_identical_exponents() {
        let mut s = MonomialSum::zero();
        s.push(MonomialTerm::power(Base::EpsA, 2).scaled(2.0));
        s.push(MonomialTerm::power(Base::EpsA, 2).scaled(-0.5));
        s.push(MonomialTerm::constant(1.0));
        assert_eq!(s.terms().len(), 2);
        let v = values(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
        let ea = v.get(Base::EpsA).re;
        let got = s.evaluate(&v).unwrap();
        assert!((got.re - (1.5 * ea * ea + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn powi_negates() {
        let t =
            (MonomialTerm::power(Base::NuA, 1) * MonomialTerm::power(Base::EpsB, -2)).scaled(-2.0);
        let inv = t.powi(-1);
        let prod = t * inv;
        assert_eq!(prod.exponents, [0; 6]);
        assert_eq!(prod.coefficient, 1.0);
    }
}
