//! Moment matrices over operator-word bases and small dense linear algebra.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::analytic::MomentOrder;
use crate::source::MomentSource;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// Product of single-mode ladder operators, left to right.
pub type Word = Vec<Ladder>;

fn dagger(word: &[Ladder]) -> Word {
    word.iter()
        .rev()
        .map(|l| match l {
            Ladder::Create => Ladder::Annihilate,
            Ladder::Annihilate => Ladder::Create,
        })
        .collect()
}

/// Expand a single-mode word into `sum coef * c^†n c^k` using `c c^† = c^† c + 1`.
pub fn normal_order(word: &[Ladder]) -> BTreeMap<(u32, u32), i64> {
    let mut out = BTreeMap::new();
    let mut stack: Vec<(Word, i64)> = vec![(word.to_vec(), 1)];
    while let Some((w, coef)) = stack.pop() {
        match w
            .windows(2)
            .position(|p| p[0] == Ladder::Annihilate && p[1] == Ladder::Create)
        {
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut contracted = w.clone();
                contracted.drain(i..i + 2);
                stack.push((swapped, coef));
                stack.push((contracted, coef));
            }
            None => {
                let creators = w.iter().filter(|&&l| l == Ladder::Create).count() as u32;
                let annihilators = w.len() as u32 - creators;
                *out.entry((creators, annihilators)).or_insert(0) += coef;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Expectation of `(word on a) (word on b)`, reduced to normally ordered
/// moments.
fn word_moment<S: MomentSource + ?Sized>(src: &S, a: &[Ladder], b: &[Ladder]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&(p, q), &ca) in &normal_order(a) {
        for (&(r, s), &cb) in &normal_order(b) {
            acc += src.moment(MomentOrder::new(p, q, r, s)?)? * (ca * cb) as f64;
        }
    }
    Ok(acc)
}

/// Basis element `f = (word on a)(word on b)` with a display label.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisElement {
    pub label: String,
    pub a: Word,
    pub b: Word,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, a: Word, b: Word) -> Self {
        Self {
            label: label.into(),
            a,
            b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// `<f_i^† f_j>`: a Gram matrix, positive semidefinite for any state.
    Physical,
    /// Moments of the state partially transposed in the `b` mode:
    /// `<A_i^† A_j  B_j B_i^†>`. A negative principal minor implies
    /// entanglement.
    PartialTranspose,
}

/// Hermitian matrix of moments over an ordered basis.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    pub basis: Vec<String>,
    pub entries: DMatrix<Complex64>,
    pub kappa_t: f64,
}

impl MomentMatrix {
    pub fn build<S: MomentSource + ?Sized>(
        src: &S,
        basis: &[BasisElement],
        ordering: Ordering,
    ) -> Result<Self> {
        let n = basis.len();
        let mut entries = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (i, fi) in basis.iter().enumerate() {
            for (j, fj) in basis.iter().enumerate() {
                let a: Word = dagger(&fi.a)
                    .into_iter()
                    .chain(fj.a.iter().copied())
                    .collect();
                let b: Word = match ordering {
                    Ordering::Physical => dagger(&fi.b)
                        .into_iter()
                        .chain(fj.b.iter().copied())
                        .collect(),
                    Ordering::PartialTranspose => {
                        fj.b.iter().copied().chain(dagger(&fi.b)).collect()
                    }
                };
                entries[(i, j)] = word_moment(src, &a, &b)?;
            }
        }
        Ok(Self {
            basis: basis.iter().map(|f| f.label.clone()).collect(),
            entries,
            kappa_t: src.kappa_t(),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `max |M_ij - conj(M_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn ensure_hermitian(&self, tolerance: f64) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > tolerance {
            return Err(Error::ImaginaryResidue {
                what: "moment matrix hermiticity",
                residue: defect,
                tolerance,
            });
        }
        Ok(())
    }

    pub fn principal(&self, selection: &[usize]) -> Result<MomentMatrix> {
        validate_selection(selection, self.dim())?;
        let k = selection.len();
        let entries = DMatrix::from_fn(k, k, |i, j| self.entries[(selection[i], selection[j])]);
        Ok(MomentMatrix {
            basis: selection.iter().map(|&i| self.basis[i].clone()).collect(),
            entries,
            kappa_t: self.kappa_t,
        })
    }

    pub fn determinant(&self) -> Complex64 {
        determinant(&self.entries)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_min_eigenvalue(&self.entries)
    }
}

pub(crate) fn validate_selection(selection: &[usize], dim: usize) -> Result<()> {
    if selection.is_empty() {
        return Err(Error::InvalidSelection("selection is empty".into()));
    }
    if let Some(&bad) = selection.iter().find(|&&i| i >= dim) {
        return Err(Error::InvalidSelection(format!(
            "index {bad} outside basis of size {dim}"
        )));
    }
    if selection.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSelection(
            "indices must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Cofactor expansion up to 3x3, partially pivoted elimination above.
pub fn determinant(m: &DMatrix<Complex64>) -> Complex64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        3 => {
            m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
                - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
                + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
        }
        _ => {
            let mut a = m.clone();
            let mut det = Complex64::new(1.0, 0.0);
            for col in 0..n {
                let pivot = (col..n)
                    .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                    .unwrap();
                if a[(pivot, col)].norm() == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                if pivot != col {
                    a.swap_rows(pivot, col);
                    det = -det;
                }
                let p = a[(col, col)];
                det *= p;
                for row in col + 1..n {
                    let factor = a[(row, col)] / p;
                    if factor == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for k in col..n {
                        let v = a[(col, k)];
                        a[(row, k)] -= factor * v;
                    }
                }
            }
            det
        }
    }
}

/// Smallest eigenvalue of `(M + M^†)/2`.
pub fn hermitian_min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ladder::*;

    #[test]
    fn normal_ordering_rules() {
        let single = normal_order(&[Annihilate, Create]);
        assert_eq!(single, BTreeMap::from([((1, 1), 1), ((0, 0), 1)]));
        // c c c^+ = c^+ c c + 2 c
        let w = normal_order(&[Annihilate, Annihilate, Create]);
        assert_eq!(w, BTreeMap::from([((1, 2), 1), ((0, 1), 2)]));
        assert_eq!(normal_order(&[]), BTreeMap::from([((0, 0), 1)]));
        assert_eq!(
            normal_order(&[Create, Annihilate]),
            BTreeMap::from([((1, 1), 1)])
        );
    }

    #[test]
    fn determinants_agree_across_methods() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                c(2.0, 0.0),
                c(1.0, 1.0),
                c(0.0, -0.5),
                c(0.3, 0.0),
                c(1.0, -1.0),
                c(3.0, 0.0),
                c(0.2, 0.1),
                c(0.0, 1.0),
                c(0.0, 0.5),
                c(0.2, -0.1),
                c(1.5, 0.0),
                c(-0.4, 0.2),
                c(0.3, 0.0),
                c(0.0, -1.0),
                c(-0.4, -0.2),
                c(2.5, 0.0),
            ],
        );
        // Laplace expansion along the first row using 3x3 cofactors
        let mut laplace = Complex64::new(0.0, 0.0);
        for j in 0..4 {
            let minor = m.clone().remove_row(0).remove_column(j);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            laplace += m[(0, j)] * determinant(&minor) * sign;
        }
        let lu = determinant(&m);
        assert!((lu - laplace).norm() < 1e-12, "{lu} vs {laplace}");
        assert!(lu.im.abs() < 1e-12);
    }

    #[test]
    fn min_eigenvalue_of_diagonal() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(1.0, 0.0),
        ]));
        assert!((hermitian_min_eigenvalue(&m) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn selection_validation() {
        assert!(validate_selection(&[], 5).is_err());
        assert!(validate_selection(&[0, 5], 5).is_err());
        assert!(validate_selection(&[2, 1], 5).is_err());
        assert!(validate_selection(&[0, 2, 4], 5).is_ok());
    }
}
