//! Seeded randomness shared by the witness constructions and the search.
//!
//! Every random draw in this crate goes through [`draw_below`] on a
//! ChaCha8 stream seeded from a caller-provided `u64`, so a published
//! witness is re-derivable from its parameters and seed alone. The draw
//! order at each call site is part of that contract and is documented
//! where the draws happen.

use rand_core::RngCore;

/// Uniform integer in `[0, n)` by rejection sampling on `next_u64`:
/// values in the short final block of the 64-bit range are discarded so
/// the remainder is exactly uniform.
pub(crate) fn draw_below(rng: &mut impl RngCore, n: u64) -> u64 {
    assert!(n > 0, "empty draw range");
    let zone = u64::MAX - u64::MAX % n;
    loop {
        let r = rng.next_u64();
        if r < zone {
            return r % n;
        }
    }
}
