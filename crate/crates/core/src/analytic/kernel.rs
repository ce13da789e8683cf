use num_complex::Complex64;

use super::MomentOrder;
use crate::model::EvolutionTable;
use crate::summation::ComplexSum;
use crate::{Error, Result};

/// Relative size of the `m = ell` diagonal summand above which a sum is
/// reported as unconverged.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Time-independent coefficients of one moment:
/// `<...>(t) = sum_{m,m'} ff[m][m'] F_m F*_m' + gg[m][m'] G_m G*_m'`.
#[derive(Debug, Clone)]
pub struct MomentKernel {
    order: MomentOrder,
    ell: usize,
    ff: Vec<Complex64>,
    gg: Vec<Complex64>,
}

impl MomentKernel {
    /// Fill both coefficient matrices from `entry(m, m') -> (ff, gg)`.
    pub(crate) fn build<F>(order: MomentOrder, ell: usize, mut entry: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<(Complex64, Complex64)>,
    {
        let n = ell + 1;
        let mut ff = Vec::with_capacity(n * n);
        let mut gg = Vec::with_capacity(n * n);
        for m in 0..n {
            for mp in 0..n {
                let (f, g) = entry(m, mp)?;
                ff.push(f);
                gg.push(g);
            }
        }
        Ok(Self { order, ell, ff, gg })
    }

    pub fn order(&self) -> MomentOrder {
        self.order
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn ff(&self, m: usize, m_prime: usize) -> Complex64 {
        self.ff[m * (self.ell + 1) + m_prime]
    }

    pub fn gg(&self, m: usize, m_prime: usize) -> Complex64 {
        self.gg[m * (self.ell + 1) + m_prime]
    }

    #[inline]
    fn summand(&self, table: &EvolutionTable, m: usize, mp: usize) -> Complex64 {
        self.ff(m, mp) * table.f[m] * table.f[mp].conj()
            + self.gg(m, mp) * table.g[m] * table.g[mp].conj()
    }

    /// Contract with the evolution amplitudes. The diagonal block is
    /// accumulated first, then off-diagonal bands of growing `|m - m'|`.
    pub fn evaluate(&self, table: &EvolutionTable) -> Result<Complex64> {
        let n = self.ell + 1;
        assert!(
            table.f.len() >= n && table.g.len() >= n,
            "evolution table shorter than kernel"
        );
        let mut acc = ComplexSum::new();
        for m in 0..n {
            acc.add(self.summand(table, m, m));
        }
        for band in 1..n {
            for lo in 0..n - band {
                acc.add(self.summand(table, lo + band, lo));
                acc.add(self.summand(table, lo, lo + band));
            }
        }
        let value = acc.value();
        let tail = self.summand(table, self.ell, self.ell).norm();
        if !value.re.is_finite() || !value.im.is_finite() || tail > TAIL_TOLERANCE * value.norm() {
            return Err(Error::NonConvergence {
                order: self.order,
                kappa_t: table.kappa_t,
                tail,
                sum: value.norm(),
            });
        }
        Ok(value)
    }
}
