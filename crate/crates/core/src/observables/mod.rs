//! Physical criteria assembled from normally ordered moments: quadrature
//! variances, the EPR total variance, and partial-transpose moment
//! determinants.
//!
//! Every function takes a [`MomentSource`](crate::MomentSource), so the same
//! composition runs on closed-form moments and on the Fock-space oracle.

mod epr;
mod matrix;
mod quadrature;
mod sv;

pub use epr::{covariance, epr_uncertainty, CovariancePair, EprReport};
pub use matrix::{
    determinant, hermitian_min_eigenvalue, normal_order, BasisElement, Ladder, MomentMatrix,
    Ordering, Word,
};
pub use quadrature::{quadrature_variance, QuadratureVariances};
pub use sv::{
    gamma_basis, gamma_matrix, gamma_minor, physical_gram, sv_matrix, sv_subdeterminant,
    GAMMA_LABELS,
};

/// Largest imaginary part tolerated on quantities that must be real.
pub const REAL_TOLERANCE: f64 = 1e-10;
/// Same, for determinants of 3x3 and larger moment matrices.
pub const DETERMINANT_REAL_TOLERANCE: f64 = 1e-9;

pub(crate) fn real_part(
    value: num_complex::Complex64,
    what: &'static str,
    tolerance: f64,
) -> crate::Result<f64> {
    let scale = value.re.abs().max(1.0);
    if value.im.abs() > tolerance * scale {
        return Err(crate::Error::ImaginaryResidue {
            what,
            residue: value.im.abs(),
            tolerance,
        });
    }
    Ok(value.re)
}
