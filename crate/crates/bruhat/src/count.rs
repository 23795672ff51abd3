//! Exact counting of linear extensions / weak-order intervals.
//!
//! Three interchangeable strategies compute `|𝓛(Φ(p))| = |[id, p]|`:
//!
//! * brute force over downsets (small n, the oracle);
//! * a DP over chain-consumption vectors whose cost is governed by the
//!   permutation's width ([`count_le_width_dp`]);
//! * a recursion over the block decomposition whose cost is governed by the
//!   *intrinsic* width ([`count_le_decomposition`]), covering separable
//!   permutations in closed form as the no-indecomposable-node case.
//!
//! Arbitrary intervals reduce to the identity-based count through
//! `|[p, q]| = |[id, p⁻¹q]|` ([`count_interval`]).
//!
//! Counts are exact [`BigNat`]s throughout — values pass n!/2ⁿ⁰ scales
//! quickly — and the DP enforces a configurable state budget instead of
//! exhausting memory.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::decompose::{block_decompose, inflate, DecompositionTree, NodeKind};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poset::{count_le_bruteforce, phi};
use crate::BigNat;

/// How a count is computed. `Auto` resolves via [`choose_strategy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Brute,
    WidthDP,
    Decomposition,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Brute => "brute",
            Strategy::WidthDP => "width-dp",
            Strategy::Decomposition => "decomposition",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Default cap on stored DP states before a count aborts with
/// [`Error::StateBudgetExceeded`].
pub const DEFAULT_STATE_BUDGET: u64 = 100_000_000;

/// Result of a width-DP run: the exact count plus the number of distinct
/// states materialized (a machine-independent cost measure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpOutcome {
    pub count: BigNat,
    pub states_stored: u64,
}

/// `|𝓛(Φ(p))|` by the bounded-width DP, default state budget.
pub fn count_le_width_dp(p: &Permutation) -> Result<BigNat> {
    count_le_width_dp_with(p, DEFAULT_STATE_BUDGET).map(|o| o.count)
}

/// `|𝓛(Φ(p))|` by DP over chain-consumption vectors.
///
/// The positions are covered by k = width(p) increasing chains; a state
/// `(c₁,…,c_k)` counts the linear extensions of the downset consuming the
/// first `cᵢ` elements of chain i. Since each chain rises in both value and
/// position, the predecessors of any element form a *prefix* of every chain,
/// so a transition is k precomputed integer comparisons. States live in
/// layers of equal total consumption; only two layers are alive at a time.
pub fn count_le_width_dp_with(p: &Permutation, budget: u64) -> Result<DpOutcome> {
    let cover = p.increasing_chain_cover();
    let k = cover.chain_count();
    let n = p.size();
    let chain_pos = cover.positions();
    let chain_val = cover.values();

    // need[j][t][i]: how many of chain i must be consumed before chain j's
    // t-th element can be placed — the length of chain i's prefix lying
    // below that element in both value and position.
    let mut need: Vec<Vec<Vec<u32>>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut per_element = Vec::with_capacity(chain_pos[j].len());
        for (t, (&pos, &val)) in chain_pos[j].iter().zip(&chain_val[j]).enumerate() {
            let mut row = Vec::with_capacity(k);
            for i in 0..k {
                if i == j {
                    row.push(t as u32);
                } else {
                    let below_val = chain_val[i].partition_point(|&v| v < val);
                    let below_pos = chain_pos[i].partition_point(|&q| q < pos);
                    row.push(below_val.min(below_pos) as u32);
                }
            }
            per_element.push(row);
        }
        need.push(per_element);
    }

    let mut layer: BTreeMap<Box<[u32]>, BigNat> = BTreeMap::new();
    layer.insert(vec![0u32; k].into_boxed_slice(), BigNat::one());
    let mut stored: u64 = 1;
    for _ in 0..n {
        let mut next: BTreeMap<Box<[u32]>, BigNat> = BTreeMap::new();
        for (state, count) in &layer {
            for j in 0..k {
                let t = state[j] as usize;
                if t == chain_pos[j].len() {
                    continue;
                }
                let row = &need[j][t];
                if !(0..k).all(|i| state[i] >= row[i]) {
                    continue;
                }
                let mut succ = state.to_vec();
                succ[j] += 1;
                match next.entry(succ.into_boxed_slice()) {
                    Entry::Vacant(e) => {
                        stored += 1;
                        if stored > budget {
                            return Err(Error::StateBudgetExceeded { stored, budget });
                        }
                        e.insert(count.clone());
                    }
                    Entry::Occupied(mut e) => *e.get_mut() += count,
                }
            }
        }
        layer = next;
    }
    debug_assert_eq!(layer.len(), 1, "only the full vector survives n steps");
    let count = layer.into_values().next().unwrap_or_else(BigNat::zero);
    Ok(DpOutcome {
        count,
        states_stored: stored,
    })
}

/// `|𝓛(Q)|` where Q is Φ(skeleton) with element j blown up into a chain of
/// `module_sizes[j]` elements — the weighted count used at indecomposable
/// decomposition nodes. Chain inflation keeps the poset two-dimensional with
/// the skeleton's width, so this runs the width DP on the inflated
/// permutation.
pub fn count_le_weighted_quotient(
    skeleton: &Permutation,
    module_sizes: &[usize],
) -> Result<BigNat> {
    count_le_weighted_quotient_with(skeleton, module_sizes, DEFAULT_STATE_BUDGET)
        .map(|o| o.count)
}

pub fn count_le_weighted_quotient_with(
    skeleton: &Permutation,
    module_sizes: &[usize],
    budget: u64,
) -> Result<DpOutcome> {
    if module_sizes.len() != skeleton.size() {
        return Err(Error::ArityMismatch {
            skeleton: skeleton.size(),
            parts: module_sizes.len(),
        });
    }
    if module_sizes.contains(&0) {
        return Err(Error::InvalidPermutation(
            "module sizes must be positive".into(),
        ));
    }
    let chains: Vec<Permutation> = module_sizes
        .iter()
        .map(|&s| Permutation::identity(s))
        .collect();
    let inflated = inflate(skeleton, &chains)?;
    count_le_width_dp_with(&inflated, budget)
}

/// `|𝓛(Φ(p))|` by recursion over the block decomposition, default budget.
pub fn count_le_decomposition(p: &Permutation) -> Result<BigNat> {
    count_le_decomposition_with(p, DEFAULT_STATE_BUDGET)
}

/// Series children stack (product), Parallel children interleave freely
/// (multinomial times product), and an indecomposable skeleton contributes a
/// weighted-quotient factor. The budget applies to each indecomposable
/// node's DP individually.
pub fn count_le_decomposition_with(p: &Permutation, budget: u64) -> Result<BigNat> {
    fn walk(node: &DecompositionTree, budget: u64) -> Result<BigNat> {
        if node.kind() == NodeKind::Leaf {
            return Ok(BigNat::one());
        }
        let mut total = match node.kind() {
            NodeKind::Series => BigNat::one(),
            NodeKind::Parallel => multinomial(&node.child_spans()),
            NodeKind::Indecomposable => {
                let skeleton = node.skeleton().expect("indecomposable skeleton");
                count_le_weighted_quotient_with(skeleton, &node.child_spans(), budget)?.count
            }
            NodeKind::Leaf => unreachable!(),
        };
        for child in node.children() {
            total *= walk(child, budget)?;
        }
        Ok(total)
    }
    walk(&block_decompose(p), budget)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k);
    let mut result = BigNat::one();
    for i in 1..=k {
        // stays integral: the partial product is C(n - k + i, i)
        result = result * (n - k + i) / i;
    }
    result
}

/// `(Σ sizes)! / ∏ sizesᵢ!` — the number of interleavings of disjoint runs
/// of the given sizes. Computed as a product of binomials so intermediates
/// stay at the scale of the answer.
pub fn multinomial(sizes: &[usize]) -> BigNat {
    let mut total: u64 = 0;
    let mut result = BigNat::one();
    for &s in sizes {
        total += s as u64;
        result *= binomial(total, s as u64);
    }
    result
}

/// Resolves `Auto`: brute force at oracle sizes, the decomposition recursion
/// when intrinsic width beats width, otherwise the width DP.
pub fn choose_strategy(p: &Permutation) -> Strategy {
    if p.size() <= 10 {
        Strategy::Brute
    } else if crate::decompose::intrinsic_width(p) < p.lds_width() {
        Strategy::Decomposition
    } else {
        Strategy::WidthDP
    }
}

/// `|[id, p]| = |𝓛(Φ(p))|` via the chosen strategy, default budget.
pub fn count_from_identity(p: &Permutation, strategy: Strategy) -> Result<BigNat> {
    count_from_identity_with(p, strategy, DEFAULT_STATE_BUDGET)
}

pub fn count_from_identity_with(
    p: &Permutation,
    strategy: Strategy,
    budget: u64,
) -> Result<BigNat> {
    let strategy = match strategy {
        Strategy::Auto => choose_strategy(p),
        other => other,
    };
    match strategy {
        Strategy::Brute => count_le_bruteforce(&phi(p)),
        Strategy::WidthDP => count_le_width_dp_with(p, budget).map(|o| o.count),
        Strategy::Decomposition => count_le_decomposition_with(p, budget),
        Strategy::Auto => unreachable!("resolved above"),
    }
}

/// `|[p, q]|` in the weak order: errors with [`Error::NotAnInterval`] when
/// `p ⋠ q`, otherwise counts `[id, p⁻¹q]`.
pub fn count_interval(p: &Permutation, q: &Permutation) -> Result<BigNat> {
    count_interval_with(p, q, Strategy::Auto, DEFAULT_STATE_BUDGET)
}

pub fn count_interval_with(
    p: &Permutation,
    q: &Permutation,
    strategy: Strategy,
    budget: u64,
) -> Result<BigNat> {
    if !p.weak_leq(q)? {
        return Err(Error::NotAnInterval);
    }
    let reduced = p.inverse().compose(q)?;
    count_from_identity_with(&reduced, strategy, budget)
}
