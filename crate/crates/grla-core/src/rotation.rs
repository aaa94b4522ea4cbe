//! Points of the unit circle written exactly as rationals mod 1.
//!
//! `RotationNumber(alpha)` stands for `exp(2*pi*i*alpha)`; reducing alpha into
//! `[0,1)` keeps monodromy eigenvalues comparable without ever leaving Q.

use crate::rational::Rat;
use serde::Serialize;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RotationNumber(Rat);

impl RotationNumber {
    /// Reduce an exponent mod 1 into `[0,1)`.
    pub fn of(alpha: &Rat) -> Self {
        RotationNumber(alpha.fract_mod_one())
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_minus_one(&self) -> bool {
        self.0 == Rat::half(1)
    }

    /// The linear factor `(x - exp(2 pi i alpha))` in readable form.
    pub fn factor_string(&self) -> String {
        if self.is_one() {
            "x - 1".to_string()
        } else if self.is_minus_one() {
            "x + 1".to_string()
        } else {
            format!("x - exp(2*pi*i*{})", self.0)
        }
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2*pi*i*{})", self.0)
    }
}

impl fmt::Debug for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.0)
    }
}
