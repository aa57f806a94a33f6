use core::fmt::Debug;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Exact integer arithmetic shared by the `i128` fast path and `BigInt`.
pub(crate) trait Int: Clone + Integer + Signed + FromPrimitive + Debug {}

/// A small constant.
pub(crate) fn small<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("small constant")
}

impl<T: Clone + Integer + Signed + FromPrimitive + Debug> Int for T {}

/// `a ∈ (gens)` over the integers.
pub(crate) fn in_ideal_generic<T: Int>(a: &T, gens: &[T]) -> bool {
    let g = gens.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        a.is_zero()
    } else {
        (a.clone() % g).is_zero()
    }
}
