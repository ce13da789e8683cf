use num_complex::Complex64;

use crate::analytic::MomentOrder;
use crate::Result;

/// Anything that can report normally ordered moments
/// `<a^†p a^q b^†r b^s>` of the field state at one instant.
pub trait MomentSource {
    fn kappa_t(&self) -> f64;

    fn moment(&self, order: MomentOrder) -> Result<Complex64>;
}
