//! Partial-transpose moment determinants.

use crate::source::MomentSource;
use crate::Result;

use super::matrix::{validate_selection, BasisElement, Ladder, MomentMatrix, Ordering};
use super::{real_part, DETERMINANT_REAL_TOLERANCE, REAL_TOLERANCE};

use Ladder::{Annihilate as Ann, Create as Cre};

/// Labels of the 5-element basis, in matrix order.
pub const GAMMA_LABELS: [&str; 5] = ["1", "a", "a+", "b+", "b"];

/// Basis `(1, a, a^†, b^†, b)`: first row of the matrix is
/// `1, <a>, <a^†>, <b^†>, <b>`.
pub fn gamma_basis() -> Vec<BasisElement> {
    vec![
        BasisElement::new("1", vec![], vec![]),
        BasisElement::new("a", vec![Ann], vec![]),
        BasisElement::new("a+", vec![Cre], vec![]),
        BasisElement::new("b+", vec![], vec![Cre]),
        BasisElement::new("b", vec![], vec![Ann]),
    ]
}

fn sv_basis() -> Vec<BasisElement> {
    vec![
        BasisElement::new("1", vec![], vec![]),
        BasisElement::new("b+", vec![], vec![Cre]),
        BasisElement::new("a b+", vec![Ann], vec![Cre]),
    ]
}

/// The 3x3 matrix with rows `(1, <b^†>, <a b^†>)`, `(<b>, <b^†b>, <a b^†b>)`,
/// `(<a^†b>, <a^†b^†b>, <a^†a b^†b>)`.
pub fn sv_matrix<S: MomentSource + ?Sized>(src: &S) -> Result<MomentMatrix> {
    let m = MomentMatrix::build(src, &sv_basis(), Ordering::PartialTranspose)?;
    m.ensure_hermitian(REAL_TOLERANCE)?;
    Ok(m)
}

/// `S(t)`; negative values certify entanglement of the two fields.
pub fn sv_subdeterminant<S: MomentSource + ?Sized>(src: &S) -> Result<f64> {
    let m = sv_matrix(src)?;
    real_part(m.determinant(), "S(t)", DETERMINANT_REAL_TOLERANCE)
}

/// The full 5x5 partial-transpose matrix over [`gamma_basis`].
pub fn gamma_matrix<S: MomentSource + ?Sized>(src: &S) -> Result<MomentMatrix> {
    let m = MomentMatrix::build(src, &gamma_basis(), Ordering::PartialTranspose)?;
    m.ensure_hermitian(REAL_TOLERANCE)?;
    Ok(m)
}

/// Determinant of a principal submatrix of the 5x5 partial-transpose matrix.
/// `selection` holds strictly increasing indices into [`GAMMA_LABELS`].
pub fn gamma_minor<S: MomentSource + ?Sized>(src: &S, selection: &[usize]) -> Result<f64> {
    validate_selection(selection, GAMMA_LABELS.len())?;
    let basis: Vec<BasisElement> = {
        let all = gamma_basis();
        selection.iter().map(|&i| all[i].clone()).collect()
    };
    let m = MomentMatrix::build(src, &basis, Ordering::PartialTranspose)?;
    m.ensure_hermitian(REAL_TOLERANCE)?;
    real_part(m.determinant(), "gamma minor", DETERMINANT_REAL_TOLERANCE)
}

/// Gram matrix `<f_i^† f_j>` over `(1, b, a b)`; positive semidefinite for
/// every physical state.
pub fn physical_gram<S: MomentSource + ?Sized>(src: &S) -> Result<MomentMatrix> {
    let basis = vec![
        BasisElement::new("1", vec![], vec![]),
        BasisElement::new("b", vec![], vec![Ann]),
        BasisElement::new("a b", vec![Ann], vec![Ann]),
    ];
    MomentMatrix::build(src, &basis, Ordering::Physical)
}
