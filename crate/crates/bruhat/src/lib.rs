//! Exact counting for intervals of the weak Bruhat order on Sₙ.
//!
//! The size of an interval `[σ₁, σ₂]` equals the number of linear extensions
//! of a two-dimensional poset: `|[σ₁, σ₂]| = |[id, σ₁⁻¹σ₂]| = |𝓛(Φ(σ₁⁻¹σ₂))|`,
//! where Φ pairs each permutation with the poset realized by numeric order
//! together with the permutation's one-line order. This crate implements
//! that reduction with three exact strategies —
//!
//! * brute force over downsets, the oracle for small sizes,
//! * a DP over chain-consumption vectors parameterized by the permutation's
//!   width (longest decreasing subsequence),
//! * a recursion over the substitution decomposition parameterized by the
//!   *intrinsic* width (separable permutations are the width-1 case),
//!
//! — plus the Φ machinery, block decomposition, and a seeded experiment
//! harness for width statistics of random permutations.
//!
//! ```
//! use bruhat::{count_interval, Permutation};
//!
//! let lower: Permutation = "1,3,2".parse()?;
//! let upper: Permutation = "3,2,1".parse()?;
//! assert_eq!(count_interval(&lower, &upper)?.to_string(), "3");
//! # Ok::<(), bruhat::Error>(())
//! ```
//!
//! Counts are arbitrary-precision ([`BigNat`]): interval sizes reach n! and
//! overflow machine words from n = 21.

pub mod count;
pub mod decompose;
pub mod error;
pub mod perm;
pub mod poset;
pub mod randexp;
pub mod selftest;

/// Arbitrary-precision non-negative count.
pub type BigNat = num_bigint::BigUint;

pub use count::{
    binomial, choose_strategy, count_from_identity, count_from_identity_with, count_interval,
    count_interval_with, count_le_decomposition, count_le_decomposition_with,
    count_le_weighted_quotient, count_le_weighted_quotient_with, count_le_width_dp,
    count_le_width_dp_with, multinomial, DpOutcome, Strategy, DEFAULT_STATE_BUDGET,
};
pub use decompose::{
    block_decompose, classify_node, enumerate_blocks, inflate, intrinsic_width, is_simple,
    reinflate, DecompositionTree, NodeKind,
};
pub use error::{Error, Result};
pub use perm::{all_permutations, weak_interval, ChainCover, InversionSet, Permutation};
pub use poset::{
    count_le_bruteforce, enumerate_linear_extensions, hasse_edges, ingest_poset_file,
    is_linear_extension, max_antichain_bruteforce, phi, phi_inverse, GenericPoset, Poset,
    Poset2D,
};
pub use randexp::{
    concentration_report, csv_string, random_permutation, runtime_scaling_experiment,
    runtime_scaling_experiment_with, sample_rng, width_statistics, write_csv, ExperimentRow,
    CSV_HEADER,
};
