//! Exhaustive, randomized and certifying searches.

mod audit;
mod certify;
pub mod counter;
mod density;
mod exhaustive;
mod expand;
mod explore;
mod grid;

pub use audit::{prime_subset_audit, LatticeCheck, PrimeAudit};
pub use certify::{
    certify_sequence, fibonacci_powers_of_two, signed_fibonacci_powers, CertificateVerdict,
    SequenceCertificate, Witness,
};
pub use counter::{PairCounter, PairTables};
pub use density::{density_estimate, DensityEstimate, Proportion};
pub use exhaustive::{
    excluded_primes, exhaustive_search, exhaustive_search_with, expansion_count, Checkpoint,
    FoundSet, SearchMode, SearchOptions, SearchReport, SearchStatus, TaskResult,
    CHECKPOINT_VERSION, FOUND_LIMIT,
};
pub use expand::expand_with_primes;
pub use explore::{explore_multiplier_space, ExplorationReport};
pub use grid::{grid_search, grid_universe, GridStrategy};
