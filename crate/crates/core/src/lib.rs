//! Exact arithmetic for product/quotient (MPTQ) and sum/difference (MSTD)
//! sets.
//!
//! * [`numeric`] holds nonzero rationals in factored form.
//! * [`setops`] computes derived sets, verdicts and structural certificates.
//! * [`transforms`] moves sets between the multiplicative and additive worlds.
//! * [`search`] runs the pruned exhaustive interval search, randomized grid
//!   search, density sampling and sequence certificates.

pub mod error;
pub mod fixtures;
pub mod numeric;
pub mod primes;
pub mod search;
pub mod setops;
pub mod transforms;

pub use error::{Error, Result};
pub use numeric::{parse_number, ExponentVector, FactoredNonzero};
pub use setops::{
    classify, AdditiveSet, ClassificationReport, LatticeSet, MultiplicativeSet, Verdict,
};
