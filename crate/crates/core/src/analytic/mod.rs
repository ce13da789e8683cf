//! Closed-form normally ordered moments.
//!
//! Two independent assemblies are provided:
//!
//! * [`single_mode`]: `<a^†r a^s>` and `<b^†r b^s>` from the per-mode
//!   prefactor/Laguerre-sum machinery.
//! * [`generalized`]: `<a^†p a^q b^†r b^s>` from coefficient extraction of a
//!   bivariate generating polynomial.
//!
//! Both reduce a moment to a time-independent [`MomentKernel`] contracted with
//! `F_m F*_m'` and `G_m G*_m'`; see [`AnalyticModel`] for the cached,
//! grid-parallel front end.

use std::fmt;

use crate::{Error, Result};

pub mod generalized;
mod kernel;
pub mod monomial;
mod series;
pub mod single_mode;

pub use generalized::poly_j_coefficient;
pub use kernel::MomentKernel;
pub use monomial::{Base, BaseValues, MonomialSum, MonomialTerm};
pub use series::{
    cavity_moment, drive_moment, generalized_moment, AnalyticModel, MomentSeries, Route, Snapshot,
};
pub use single_mode::{aux_s, coeff_c};

/// Highest total degree `p+q+r+s` accepted for a moment.
pub const MAX_TOTAL_ORDER: u32 = 8;

/// Exponents of `<a^†p a^q b^†r b^s>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentOrder {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub s: u32,
}

impl MomentOrder {
    pub fn new(p: u32, q: u32, r: u32, s: u32) -> Result<Self> {
        let order = Self { p, q, r, s };
        if order.total() > MAX_TOTAL_ORDER {
            return Err(Error::OrderTooHigh {
                order,
                max: MAX_TOTAL_ORDER,
            });
        }
        Ok(order)
    }

    /// `<a^†r a^s>`.
    pub fn cavity(r: u32, s: u32) -> Result<Self> {
        Self::new(r, s, 0, 0)
    }

    /// `<b^†r b^s>`.
    pub fn drive(r: u32, s: u32) -> Result<Self> {
        Self::new(0, 0, r, s)
    }

    pub fn total(&self) -> u32 {
        self.p + self.q + self.r + self.s
    }

    /// Order of the complex-conjugate moment.
    pub fn conjugate(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            r: self.s,
            s: self.r,
        }
    }

    pub fn is_cavity_only(&self) -> bool {
        self.r == 0 && self.s == 0
    }

    pub fn is_drive_only(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// Every order with `p+q+r+s <= max_total`, lexicographic.
    pub fn all_up_to(max_total: u32) -> Vec<MomentOrder> {
        let max_total = max_total.min(MAX_TOTAL_ORDER);
        let mut out = Vec::new();
        for p in 0..=max_total {
            for q in 0..=max_total - p {
                for r in 0..=max_total - p - q {
                    for s in 0..=max_total - p - q - r {
                        out.push(MomentOrder { p, q, r, s });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MomentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.q, self.r, self.s)
    }
}

/// Upper limit `ell` of the double sums over Fock levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Truncation(usize);

impl Truncation {
    pub const DEFAULT_ELL: usize = 60;

    pub fn new(ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidTruncation(ell));
        }
        Ok(Self(ell))
    }

    pub fn ell(&self) -> usize {
        self.0
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self(Self::DEFAULT_ELL)
    }
}

/// Which lab mode a single-mode quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Cavity field `a`.
    A,
    /// Driving field `b`.
    B,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::A => "a",
            Mode::B => "b",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_enumeration_count() {
        // C(4 + 4, 4)
        assert_eq!(MomentOrder::all_up_to(4).len(), 70);
        assert_eq!(
            MomentOrder::all_up_to(0),
            vec![MomentOrder {
                p: 0,
                q: 0,
                r: 0,
                s: 0
            }]
        );
    }

    #[test]
    fn ceiling_enforced() {
        assert!(MomentOrder::new(2, 2, 2, 2).is_ok());
        assert!(matches!(
            MomentOrder::new(3, 2, 2, 2),
            Err(Error::OrderTooHigh { .. })
        ));
        assert!(Truncation::new(0).is_err());
        assert_eq!(Truncation::default().ell(), 60);
    }
}
