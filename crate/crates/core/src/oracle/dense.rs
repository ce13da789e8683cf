//! Exact diagonalisation in the lab-mode basis `|atom, n_a, n_b>`.
//!
//! The interaction conserves `n_a + n_b + (sigma_z + 1)/2`, so each
//! excitation block is diagonalised separately and the only truncation is the
//! highest block kept. Nothing here uses the quasi-mode rotation or the
//! dressed amplitudes.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::analytic::MomentOrder;
use crate::model::{InitialFields, ModelParams};
use crate::source::MomentSource;
use crate::{Error, Result};

const EXCITED: usize = 1;
const GROUND: usize = 0;

#[derive(Debug, Clone)]
struct Block {
    states: Vec<(usize, usize, usize)>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
    /// initial state in the eigenbasis
    projected: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct DenseOracle {
    max_excitation: usize,
    blocks: Vec<Block>,
}

fn coherent_amplitudes(nu: Complex64, len: usize) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(len);
    let mut cur = Complex64::new((-0.5 * nu.norm_sqr()).exp(), 0.0);
    for n in 0..len {
        if n > 0 {
            cur *= nu / (n as f64).sqrt();
        }
        c.push(cur);
    }
    c
}

impl DenseOracle {
    /// Keep excitation blocks `0..=max_excitation`. Fails when the initial
    /// photon-number distribution leaks more than `1e-12` above that.
    pub fn new(
        params: &ModelParams,
        fields: &InitialFields,
        max_excitation: usize,
    ) -> Result<Self> {
        let len = max_excitation + 1;
        let ca = coherent_amplitudes(fields.nu_a(), len);
        let cb = coherent_amplitudes(fields.nu_b(), len);
        let kept: f64 = (0..max_excitation)
            .map(|e| {
                (0..=e)
                    .map(|na| (ca[na] * cb[e - na]).norm_sqr())
                    .sum::<f64>()
            })
            .sum();
        let tail = (1.0 - kept).max(0.0);
        if tail > 1e-12 {
            return Err(Error::CutoffTooSmall {
                cutoff: max_excitation,
                tail,
            });
        }

        let detuning = params.delta_over_kappa_eff();
        let (ea, eb) = (params.eps_a(), params.eps_b());
        let mut blocks = Vec::with_capacity(len);
        for e in 0..=max_excitation {
            let mut states: Vec<(usize, usize, usize)> =
                (0..=e).map(|na| (GROUND, na, e - na)).collect();
            if e > 0 {
                states.extend((0..e).map(|na| (EXCITED, na, e - 1 - na)));
            }
            let dim = states.len();
            let index = |s: (usize, usize, usize)| states.iter().position(|&x| x == s);
            let mut h = DMatrix::<f64>::zeros(dim, dim);
            for (i, &(atom, na, nb)) in states.iter().enumerate() {
                h[(i, i)] = if atom == EXCITED {
                    0.5 * detuning
                } else {
                    -0.5 * detuning
                };
                if atom == EXCITED {
                    // A sigma_+ |g, na+1, nb> and |g, na, nb+1>
                    if let Some(j) = index((GROUND, na + 1, nb)) {
                        h[(i, j)] = ea * ((na + 1) as f64).sqrt();
                        h[(j, i)] = h[(i, j)];
                    }
                    if let Some(j) = index((GROUND, na, nb + 1)) {
                        h[(i, j)] = eb * ((nb + 1) as f64).sqrt();
                        h[(j, i)] = h[(i, j)];
                    }
                }
            }
            let eig = SymmetricEigen::new(h);
            let init: Vec<Complex64> = states
                .iter()
                .map(|&(atom, na, nb)| {
                    if atom == EXCITED {
                        ca[na] * cb[nb]
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            let projected = (0..dim)
                .map(|k| (0..dim).map(|i| init[i] * eig.eigenvectors[(i, k)]).sum())
                .collect();
            blocks.push(Block {
                states,
                eigenvalues: eig.eigenvalues,
                eigenvectors: eig.eigenvectors,
                projected,
            });
        }
        Ok(Self {
            max_excitation,
            blocks,
        })
    }

    pub fn state_at(&self, kappa_t: f64) -> DenseState {
        let side = self.max_excitation + 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * side * side];
        for b in &self.blocks {
            let dim = b.states.len();
            let evolved: Vec<Complex64> = (0..dim)
                .map(|k| b.projected[k] * Complex64::from_polar(1.0, -b.eigenvalues[k] * kappa_t))
                .collect();
            for (i, &(atom, na, nb)) in b.states.iter().enumerate() {
                let v: Complex64 = (0..dim).map(|k| evolved[k] * b.eigenvectors[(i, k)]).sum();
                amps[(atom * side + na) * side + nb] = v;
            }
        }
        DenseState {
            kappa_t,
            side,
            amps,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DenseState {
    kappa_t: f64,
    side: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    fn amp(&self, atom: usize, na: usize, nb: usize) -> Complex64 {
        if na >= self.side || nb >= self.side {
            return Complex64::new(0.0, 0.0);
        }
        self.amps[(atom * self.side + na) * self.side + nb]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn excited_population(&self) -> f64 {
        let s = self.side;
        self.amps[s * s..].iter().map(|a| a.norm_sqr()).sum()
    }

    /// `a^i b^j |psi>` component at `(atom, na, nb)`.
    fn lowered(&self, i: usize, j: usize, atom: usize, na: usize, nb: usize) -> Complex64 {
        let rise = |n: usize, k: usize| {
            ((n + 1)..=(n + k))
                .fold(1.0, |acc, x| acc * x as f64)
                .sqrt()
        };
        self.amp(atom, na + i, nb + j) * rise(na, i) * rise(nb, j)
    }
}

impl MomentSource for DenseState {
    fn kappa_t(&self) -> f64 {
        self.kappa_t
    }

    fn moment(&self, order: MomentOrder) -> Result<Complex64> {
        let (p, q, r, s) = (
            order.p as usize,
            order.q as usize,
            order.r as usize,
            order.s as usize,
        );
        let mut acc = Complex64::new(0.0, 0.0);
        for atom in [GROUND, EXCITED] {
            for na in 0..self.side {
                for nb in 0..self.side - na {
                    acc +=
                        self.lowered(p, r, atom, na, nb).conj() * self.lowered(q, s, atom, na, nb);
                }
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn norm_and_initial_moments() {
        let p = ModelParams::with_relative_detuning(3.0, 1.0, 6.0).unwrap();
        let f = InitialFields::new(&p, Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
        let oracle = DenseOracle::new(&p, &f, 40).unwrap();
        let s0 = oracle.state_at(0.0);
        assert_relative_eq!(s0.norm_sqr(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(s0.excited_population(), 1.0, epsilon = 1e-12);
        let ab = s0.moment(MomentOrder::new(1, 0, 0, 1).unwrap()).unwrap();
        assert_relative_eq!((ab - Complex64::new(2.0, 0.0)).norm(), 0.0, epsilon = 1e-10);
        let s = oracle.state_at(17.0);
        assert_relative_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn too_few_blocks_rejected() {
        let p = ModelParams::new(3.0, 1.0, 0.0).unwrap();
        let f = InitialFields::new(&p, Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
        assert!(matches!(
            DenseOracle::new(&p, &f, 10),
            Err(Error::CutoffTooSmall { .. })
        ));
    }
}
