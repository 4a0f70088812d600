use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// Exact `lcm(a, a+1, …, b)`.
pub fn lcm_range(a: u64, b: u64) -> Result<BigUint> {
    if a == 0 || a > b {
        return Err(Error::InvalidParameter(format!("need 1 <= a <= b, got a={a}, b={b}")));
    }
    Ok((a..=b).fold(BigUint::one(), |acc, n| acc.lcm(&BigUint::from(n))))
}
