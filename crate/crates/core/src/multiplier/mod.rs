//! Multiplication by a fixed `q` on Zeckendorf words, and the window-update
//! map it induces (or fails to induce) on length-`M` windows.

mod stream;
mod theta;

pub use stream::{
    stream_multiply, MultiplierSpec, StreamFailure, StreamFailureKind, StreamOutcome, StreamState,
};
pub use theta::{
    locality_probe, theta_from_samples, theta_synthesize, ConflictWitness, Coverage, ThetaMap,
};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::word::{zeck_encode, ZeckWord};

/// `Z(q * n)`, computed exactly. Ground truth for every other product path.
pub fn mul_oracle(n: &BigUint, q: u64) -> Result<ZeckWord> {
    check_q(q)?;
    if n.is_zero() {
        return Err(domain("multiplicand must be >= 1"));
    }
    zeck_encode(&(n * q))
}

pub(crate) fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(domain(format!("multiplier q must be >= 2, got {q}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: u32, q: u64) -> String {
        mul_oracle(&BigUint::from(n), q).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(oracle(2, 2), "101");
        assert_eq!(oracle(5, 2), "10010");
        assert_eq!(oracle(1, 2), "10");
    }

    #[test]
    fn preconditions() {
        assert!(mul_oracle(&BigUint::zero(), 2).is_err());
        assert!(mul_oracle(&BigUint::from(3u8), 1).is_err());
    }
}
