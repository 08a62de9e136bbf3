//! Shared inputs for the criterion benches.

use antisym_core::rational::ratio;
use antisym_core::Rational;

/// A fixed, non-degenerate evaluation point for character identities.
pub fn eval_point(d: usize) -> Vec<Rational> {
    (0..d).map(|i| ratio(2 * i as i64 + 1, i as i64 + 2)).collect()
}
