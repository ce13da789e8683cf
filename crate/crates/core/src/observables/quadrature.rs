use crate::analytic::{Mode, MomentOrder};
use crate::source::MomentSource;
use crate::Result;

use super::{real_part, REAL_TOLERANCE};

/// Variances of `Q = (c^† + c)/sqrt2` and `P = i(c^† - c)/sqrt2`.
/// Squeezing means one of them is below `1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureVariances {
    pub v_q: f64,
    pub v_p: f64,
    pub mode: Mode,
    pub kappa_t: f64,
}

impl QuadratureVariances {
    pub fn is_squeezed(&self) -> bool {
        self.v_q < 0.5 || self.v_p < 0.5
    }
}

fn order(mode: Mode, r: u32, s: u32) -> MomentOrder {
    match mode {
        Mode::A => MomentOrder {
            p: r,
            q: s,
            r: 0,
            s: 0,
        },
        Mode::B => MomentOrder { p: 0, q: 0, r, s },
    }
}

pub fn quadrature_variance<S: MomentSource + ?Sized>(
    src: &S,
    mode: Mode,
) -> Result<QuadratureVariances> {
    let mean = src.moment(order(mode, 0, 1))?;
    let number = real_part(src.moment(order(mode, 1, 1))?, "<c^+ c>", REAL_TOLERANCE)?;
    let pair = src.moment(order(mode, 0, 2))?;
    Ok(QuadratureVariances {
        v_q: 0.5 + number + pair.re - 2.0 * mean.re * mean.re,
        v_p: 0.5 + number - pair.re - 2.0 * mean.im * mean.im,
        mode,
        kappa_t: src.kappa_t(),
    })
}
