//! Two-dimensional posets via the Φ bijection, generic posets for file
//! ingestion, and brute-force oracles (linear-extension counts, antichains).
//!
//! Φ sends a permutation σ to the poset on `{1..n}` whose strict relation is
//! the intersection of two linear orders: numeric order and the left-to-right
//! order of σ's one-line word. Every such poset has dimension ≤ 2 and is
//! naturally labeled (the identity word is always a linear extension), and Φ
//! is a bijection onto this class — [`phi_inverse`] recovers σ.
//!
//! The oracles here deliberately trade asymptotics for obvious correctness.
//! They exist to pin down the optimized counting strategies and are hard-
//! capped rather than silently slow.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::BigNat;

/// A finite strict partial order on labels `{1..n}`.
pub trait Poset {
    fn size(&self) -> usize;

    /// Strict comparison `a ≺ b`. Both labels must lie in `{1..size()}`.
    fn less(&self, a: usize, b: usize) -> bool;
}

/// A two-dimensional naturally labeled poset, encoded by its defining
/// permutation: `a ≺ b` iff `a < b` numerically and `a` precedes `b` in the
/// permutation's one-line word. The relation is derived on demand — nothing
/// quadratic is materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset2D {
    sigma: Permutation,
    /// `pos[v - 1]` is the 1-based position of value `v` in `sigma`.
    pos: Vec<usize>,
}

/// The Φ bijection: the poset whose realizer is numeric order together with
/// the one-line order of `p`.
pub fn phi(p: &Permutation) -> Poset2D {
    Poset2D {
        pos: p.positions(),
        sigma: p.clone(),
    }
}

/// Inverse of [`phi`]: the defining permutation of a two-dimensional poset.
pub fn phi_inverse(p: &Poset2D) -> Permutation {
    p.sigma.clone()
}

impl Poset2D {
    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// Strict relation with label validation, unlike the panicking trait
    /// method.
    pub fn relation_holds(&self, a: usize, b: usize) -> Result<bool> {
        let n = self.sigma.size();
        for label in [a, b] {
            if label == 0 || label > n {
                return Err(Error::LabelOutOfRange { label, n });
            }
        }
        Ok(self.less(a, b))
    }
}

impl Poset for Poset2D {
    fn size(&self) -> usize {
        self.sigma.size()
    }

    fn less(&self, a: usize, b: usize) -> bool {
        a < b && self.pos[a - 1] < self.pos[b - 1]
    }
}

/// An explicit strict partial order, stored transitively closed. Oracle- and
/// ingestion-scale only: the relation matrix is n².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPoset {
    n: usize,
    /// Row-major strict relation: `rel[(a-1) * n + (b-1)]` iff `a ≺ b`.
    rel: Vec<bool>,
}

impl GenericPoset {
    /// Builds the transitive closure of the given strict relations,
    /// rejecting anything cyclic (including `a ≺ a`).
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPoset("size must be positive".into()));
        }
        let mut adj = vec![Vec::new(); n]; // 0-based successor lists
        let mut indegree = vec![0usize; n];
        for &(a, b) in pairs {
            for label in [a, b] {
                if label == 0 || label > n {
                    return Err(Error::LabelOutOfRange { label, n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected);
            }
            adj[a - 1].push(b - 1);
            indegree[b - 1] += 1;
        }

        // Kahn's algorithm: anything left unprocessed sits on a cycle.
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut processed = 0;
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            processed += 1;
            order.push(v);
            for &w in &adj[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if processed < n {
            return Err(Error::CycleDetected);
        }

        // Close transitively in reverse topological order:
        // reach(v) = successors(v) ∪ ⋃ reach(successors).
        let mut rel = vec![false; n * n];
        for &v in order.iter().rev() {
            for &w in &adj[v] {
                rel[v * n + w] = true;
                for u in 0..n {
                    if rel[w * n + u] {
                        rel[v * n + u] = true;
                    }
                }
            }
        }
        Ok(GenericPoset { n, rel })
    }

    /// Materializes any poset as a `GenericPoset` (oracle scales only).
    pub fn from_poset<P: Poset + ?Sized>(p: &P) -> Self {
        let n = p.size();
        let mut rel = vec![false; n * n];
        for a in 1..=n {
            for b in 1..=n {
                if p.less(a, b) {
                    rel[(a - 1) * n + (b - 1)] = true;
                }
            }
        }
        GenericPoset { n, rel }
    }
}

impl Poset for GenericPoset {
    fn size(&self) -> usize {
        self.n
    }

    fn less(&self, a: usize, b: usize) -> bool {
        self.rel[(a - 1) * self.n + (b - 1)]
    }
}

/// Parses the poset file format: the first significant line is `n`, and each
/// following significant line `a b` asserts `a ≺ b`. `#` starts a comment;
/// blank lines are skipped. The result is transitively closed; cycles are an
/// error.
pub fn ingest_poset_file(text: &str) -> Result<GenericPoset> {
    let mut lines = text.lines().map(|line| {
        match line.find('#') {
            Some(i) => line[..i].trim(),
            None => line.trim(),
        }
    });
    let n: usize = match lines.by_ref().find(|l| !l.is_empty()) {
        Some(header) => header.parse().map_err(|_| {
            Error::InvalidPoset(format!("expected a size on the first line, got {header:?}"))
        })?,
        None => return Err(Error::InvalidPoset("empty poset file".into())),
    };
    let mut pairs = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::InvalidPoset(format!(
                    "expected a line of the form \"a b\", got {line:?}"
                )))
            }
        };
        let parse = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::InvalidPoset(format!("cannot parse label {t:?}")))
        };
        pairs.push((parse(a)?, parse(b)?));
    }
    GenericPoset::from_relations(n, &pairs)
}

/// Covering pairs `(a, b)`: `a ≺ b` with nothing strictly between. Sorted.
/// O(n³) — for figures, tests, and small reports.
pub fn hasse_edges<P: Poset + ?Sized>(p: &P) -> Vec<(usize, usize)> {
    let n = p.size();
    let mut edges = Vec::new();
    for a in 1..=n {
        'pair: for b in 1..=n {
            if !p.less(a, b) {
                continue;
            }
            for c in 1..=n {
                if p.less(a, c) && p.less(c, b) {
                    continue 'pair;
                }
            }
            edges.push((a, b));
        }
    }
    edges.sort_unstable();
    edges
}

/// Whether `seq` lists all labels of `p` in an order compatible with the
/// relation. Errors if `seq` is not a permutation of `{1..n}`.
pub fn is_linear_extension<P: Poset + ?Sized>(p: &P, seq: &[usize]) -> Result<bool> {
    let n = p.size();
    if seq.len() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: seq.len(),
        });
    }
    let mut place = vec![usize::MAX; n];
    for (i, &v) in seq.iter().enumerate() {
        if v == 0 || v > n {
            return Err(Error::LabelOutOfRange { label: v, n });
        }
        if place[v - 1] != usize::MAX {
            return Err(Error::InvalidPermutation(format!("{v} repeated")));
        }
        place[v - 1] = i;
    }
    for a in 1..=n {
        for b in 1..=n {
            if p.less(a, b) && place[a - 1] > place[b - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cap for [`count_le_bruteforce`]: the DP walks all 2ⁿ downsets.
pub const LE_BRUTEFORCE_CAP: usize = 14;

/// Exact number of linear extensions by dynamic programming over downsets
/// encoded as bitmasks. Capped at [`LE_BRUTEFORCE_CAP`].
pub fn count_le_bruteforce<P: Poset + ?Sized>(p: &P) -> Result<BigNat> {
    let n = p.size();
    if n > LE_BRUTEFORCE_CAP {
        return Err(Error::SizeCapExceeded {
            n,
            cap: LE_BRUTEFORCE_CAP,
        });
    }
    // pred[v] = bitmask of strict predecessors of label v + 1
    let mut pred = vec![0u32; n];
    for (b, mask) in pred.iter_mut().enumerate() {
        for a in 0..n {
            if p.less(a + 1, b + 1) {
                *mask |= 1 << a;
            }
        }
    }
    let full = (1u32 << n) - 1;
    let mut table = vec![BigNat::zero(); 1 << n];
    table[0] = BigNat::from(1u32);
    for mask in 0..full {
        if table[mask as usize].is_zero() {
            continue; // not a downset
        }
        let mut free = !mask & full;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            let v = bit.trailing_zeros() as usize;
            if pred[v] & mask == pred[v] {
                let add = table[mask as usize].clone();
                table[(mask | bit) as usize] += add;
            }
            free ^= bit;
        }
    }
    Ok(table[full as usize].clone())
}

/// Cap for [`enumerate_linear_extensions`]: output alone can reach n!.
pub const LE_ENUMERATION_CAP: usize = 10;

/// Every linear extension of `p`, as label sequences in lexicographic order.
/// Backtracking over minimal elements; capped at [`LE_ENUMERATION_CAP`].
pub fn enumerate_linear_extensions<P: Poset + ?Sized>(p: &P) -> Result<Vec<Vec<usize>>> {
    let n = p.size();
    if n > LE_ENUMERATION_CAP {
        return Err(Error::SizeCapExceeded {
            n,
            cap: LE_ENUMERATION_CAP,
        });
    }
    let mut pred = vec![0u32; n];
    for (b, mask) in pred.iter_mut().enumerate() {
        for a in 0..n {
            if p.less(a + 1, b + 1) {
                *mask |= 1 << a;
            }
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(
        n: usize,
        pred: &[u32],
        placed: u32,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            let bit = 1u32 << v;
            if placed & bit == 0 && pred[v] & placed == pred[v] {
                current.push(v + 1);
                rec(n, pred, placed | bit, current, out);
                current.pop();
            }
        }
    }
    rec(n, &pred, 0, &mut current, &mut out);
    Ok(out)
}

/// Cap for [`max_antichain_bruteforce`]: the DP table has 2ⁿ bytes.
pub const ANTICHAIN_CAP: usize = 20;

/// Size of the largest antichain (the poset's width), by subset DP over
/// the comparability graph. Capped at [`ANTICHAIN_CAP`].
pub fn max_antichain_bruteforce<P: Poset + ?Sized>(p: &P) -> Result<usize> {
    let n = p.size();
    if n > ANTICHAIN_CAP {
        return Err(Error::SizeCapExceeded {
            n,
            cap: ANTICHAIN_CAP,
        });
    }
    // comp[v] = labels comparable to v + 1 (either direction)
    let mut comp = vec![0u32; n];
    for a in 0..n {
        for b in 0..n {
            if p.less(a + 1, b + 1) {
                comp[a] |= 1 << b;
                comp[b] |= 1 << a;
            }
        }
    }
    // best[s] = largest antichain within subset s; branch on s's lowest label
    let mut best = vec![0u8; 1usize << n];
    for s in 1..(1usize << n) {
        let bit = s & s.wrapping_neg();
        let v = bit.trailing_zeros() as usize;
        let without = best[s ^ bit];
        let with = 1 + best[s & !bit & !(comp[v] as usize)];
        best[s] = without.max(with);
    }
    Ok(best[(1usize << n) - 1] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    #[test]
    fn phi_relation_examples() {
        let poset = phi(&p("2,4,1,3,5"));
        assert!(poset.relation_holds(2, 3).unwrap());
        assert!(!poset.relation_holds(1, 4).unwrap());
        assert!(!poset.relation_holds(4, 1).unwrap());
        assert!(!poset.relation_holds(3, 3).unwrap());
        assert!(matches!(
            poset.relation_holds(0, 3),
            Err(Error::LabelOutOfRange { .. })
        ));
        assert!(matches!(
            poset.relation_holds(2, 6),
            Err(Error::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn phi_hasse_edges_of_24135() {
        let poset = phi(&p("2,4,1,3,5"));
        assert_eq!(
            hasse_edges(&poset),
            vec![(1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]
        );
    }

    #[test]
    fn phi_identity_is_chain() {
        let poset = phi(&Permutation::identity(5));
        for a in 1..=5 {
            for b in 1..=5 {
                assert_eq!(poset.less(a, b), a < b);
            }
        }
    }

    #[test]
    fn phi_312_relations() {
        let poset = phi(&p("3,1,2"));
        let strict: Vec<(usize, usize)> = (1..=3)
            .flat_map(|a| (1..=3).map(move |b| (a, b)))
            .filter(|&(a, b)| poset.less(a, b))
            .collect();
        assert_eq!(strict, vec![(1, 2)]);
    }

    #[test]
    fn phi_reversal_is_antichain() {
        let poset = phi(&Permutation::reversal(4));
        for a in 1..=4 {
            for b in 1..=4 {
                assert!(!poset.less(a, b));
            }
        }
    }

    #[test]
    fn phi_roundtrip() {
        for perm in all_permutations(6) {
            assert_eq!(phi_inverse(&phi(&perm)), perm);
        }
    }

    #[test]
    fn phi_is_a_partial_order_and_naturally_labeled() {
        for perm in all_permutations(5) {
            let poset = phi(&perm);
            let n = poset.size();
            for a in 1..=n {
                assert!(!poset.less(a, a));
                for b in 1..=n {
                    if poset.less(a, b) {
                        assert!(!poset.less(b, a));
                        for c in 1..=n {
                            if poset.less(b, c) {
                                assert!(poset.less(a, c));
                            }
                        }
                    }
                }
            }
            let natural: Vec<usize> = (1..=n).collect();
            assert!(is_linear_extension(&poset, &natural).unwrap());
        }
    }

    #[test]
    fn linear_extension_examples() {
        let poset = phi(&p("3,1,2"));
        assert!(is_linear_extension(&poset, &[3, 1, 2]).unwrap());
        assert!(!is_linear_extension(&poset, &[2, 1, 3]).unwrap());
        assert!(is_linear_extension(&poset, &[1, 2]).is_err());
        assert!(is_linear_extension(&poset, &[1, 1, 2]).is_err());
        assert!(is_linear_extension(&poset, &[1, 2, 4]).is_err());
    }

    #[test]
    fn count_le_examples() {
        assert_eq!(
            count_le_bruteforce(&phi(&p("2,4,1,3,5"))).unwrap(),
            BigNat::from(5u32)
        );
        assert_eq!(
            count_le_bruteforce(&phi(&Permutation::reversal(4))).unwrap(),
            BigNat::from(24u32)
        );
        assert_eq!(
            count_le_bruteforce(&phi(&Permutation::identity(9))).unwrap(),
            BigNat::from(1u32)
        );
        assert_eq!(
            count_le_bruteforce(&phi(&p("3,1,2"))).unwrap(),
            BigNat::from(3u32)
        );
        assert!(matches!(
            count_le_bruteforce(&phi(&Permutation::identity(15))),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_matches_count_and_filter() {
        for perm in all_permutations(5) {
            let poset = phi(&perm);
            let all = enumerate_linear_extensions(&poset).unwrap();
            assert_eq!(
                BigNat::from(all.len()),
                count_le_bruteforce(&poset).unwrap(),
                "{perm}"
            );
            for seq in &all {
                assert!(is_linear_extension(&poset, seq).unwrap());
            }
            let expected = all_permutations(5)
                .iter()
                .filter(|q| is_linear_extension(&poset, q.images()).unwrap())
                .count();
            assert_eq!(all.len(), expected);
        }
    }

    #[test]
    fn phi_312_extension_set() {
        let exts = enumerate_linear_extensions(&phi(&p("3,1,2"))).unwrap();
        assert_eq!(exts, vec![vec![1, 2, 3], vec![1, 3, 2], vec![3, 1, 2]]);
    }

    #[test]
    fn antichain_examples() {
        assert_eq!(max_antichain_bruteforce(&phi(&p("2,4,1,3,5"))).unwrap(), 2);
        assert_eq!(
            max_antichain_bruteforce(&phi(&Permutation::identity(7))).unwrap(),
            1
        );
        assert_eq!(
            max_antichain_bruteforce(&phi(&Permutation::reversal(6))).unwrap(),
            6
        );
        assert!(matches!(
            max_antichain_bruteforce(&phi(&Permutation::identity(21))),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn ingest_examples() {
        let poset = ingest_poset_file("3\n1 2\n").unwrap();
        assert!(poset.less(1, 2));
        assert!(!poset.less(2, 1));
        assert!(!poset.less(1, 3) && !poset.less(3, 1));

        assert!(matches!(
            ingest_poset_file("2\n1 2\n2 1\n"),
            Err(Error::CycleDetected)
        ));
        assert!(matches!(
            ingest_poset_file("2\n1 1\n"),
            Err(Error::CycleDetected)
        ));

        let fig2 = ingest_poset_file("5\n1 3\n2 3\n2 4\n3 5\n4 5\n# realizer sigma = 24135\n").unwrap();
        let expected = phi(&p("2,4,1,3,5"));
        for a in 1..=5 {
            for b in 1..=5 {
                assert_eq!(fig2.less(a, b), expected.less(a, b), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn ingest_closes_transitively() {
        let poset = ingest_poset_file("4\n1 2\n2 3\n3 4\n").unwrap();
        assert!(poset.less(1, 4));
        assert!(poset.less(1, 3));
        assert!(poset.less(2, 4));
    }

    #[test]
    fn ingest_rejects_malformed_input() {
        assert!(ingest_poset_file("").is_err());
        assert!(ingest_poset_file("# only a comment\n").is_err());
        assert!(ingest_poset_file("three\n1 2\n").is_err());
        assert!(ingest_poset_file("3\n1\n").is_err());
        assert!(ingest_poset_file("3\n1 2 3\n").is_err());
        assert!(matches!(
            ingest_poset_file("3\n1 4\n"),
            Err(Error::LabelOutOfRange { .. })
        ));
        assert!(matches!(
            ingest_poset_file("3\n0 2\n"),
            Err(Error::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn ingest_allows_comments_and_blanks() {
        let text = "# header\n\n3\n\n# chain\n1 2 # tail comment\n2 3\n";
        let poset = ingest_poset_file(text).unwrap();
        assert!(poset.less(1, 3));
    }

    #[test]
    fn generic_poset_matches_poset2d_counts() {
        for perm in all_permutations(5) {
            let direct = phi(&perm);
            let generic = GenericPoset::from_poset(&direct);
            assert_eq!(
                count_le_bruteforce(&generic).unwrap(),
                count_le_bruteforce(&direct).unwrap()
            );
            assert_eq!(
                max_antichain_bruteforce(&generic).unwrap(),
                max_antichain_bruteforce(&direct).unwrap()
            );
        }
    }
}
