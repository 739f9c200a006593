//! The exact integer scalar that every chip count, firing count and lattice
//! entry is expressed in.
//!
//! Everything numeric in this crate is generic over [`Int`]. The crate root
//! fixes it to [`num_bigint::BigInt`] because Laplacian lattice computations
//! blow up machine words on adversarial inputs; `i64` and `i128` are useful
//! for fast exhaustive searches over small graphs.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a chip count or lattice entry.
pub trait Int:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count does not fit the scalar type")
    }

    /// Converts a small value to `usize`; `None` when negative or too large.
    fn to_count(&self) -> Option<usize> {
        self.to_usize()
    }
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// `ceil(a / b)` for `b > 0`.
pub(crate) fn div_ceil<T: Int>(a: &T, b: &T) -> T {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + T::one()
    }
}

/// Gcd of a sequence; zero for an empty or all-zero sequence.
pub(crate) fn gcd_all<'a, T: Int>(values: impl IntoIterator<Item = &'a T>) -> T {
    values
        .into_iter()
        .fold(T::zero(), |acc, v| acc.gcd(v))
}
