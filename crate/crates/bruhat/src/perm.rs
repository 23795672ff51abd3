//! Permutations of `{1..n}`, the weak Bruhat order, and chain covers.
//!
//! A [`Permutation`] is stored by its one-line notation: `images[i]` is the
//! image of position `i + 1`. All public interfaces are 1-based, matching the
//! usual combinatorics convention.
//!
//! The weak order here is the *right* weak order: `p` is covered by the
//! permutation obtained by swapping two adjacent positions holding an ascent,
//! and `p ⪯ q` exactly when every inversion of `p` (a value pair `(a, b)` with
//! `a < b` and `b` written before `a`) is an inversion of `q`. [`Permutation::weak_leq`]
//! decides this in `O(n log n)` through the length identity
//! `inv(p) + inv(p⁻¹q) = inv(q)`; the equivalence of the two formulations is
//! pinned down by exhaustive tests rather than assumed.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest size accepted by the text parsers.
pub const MAX_PARSE_SIZE: usize = 1_000_000;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line images, validating that they
    /// form a bijection on `{1..n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 {
                return Err(Error::InvalidPermutation(
                    "entries must be positive".into(),
                ));
            }
            if v > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} out of range for size {n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{v} repeated")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The identity permutation `1 2 … n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have size at least 1");
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The reversal `n n-1 … 1`, the maximum of the weak order.
    pub fn reversal(n: usize) -> Self {
        assert!(n >= 1, "permutations have size at least 1");
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// One-line images; `images()[i]` is the image of position `i + 1`.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composition `(self ∘ g)(x) = self(g(x))`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation> {
        if self.size() != g.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: g.size(),
            });
        }
        let images = g.images.iter().map(|&x| self.images[x - 1]).collect();
        Ok(Permutation { images })
    }

    /// The inverse permutation: `inverse()(self(x)) = x`.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Positions indexed by value: `positions()[v - 1]` is the 1-based
    /// position at which `v` is written.
    pub fn positions(&self) -> Vec<usize> {
        self.inverse().images
    }

    /// Number of inversions, counted in `O(n log n)` by merge sort.
    pub fn inversion_count(&self) -> u64 {
        fn sort_count(buf: &mut [usize], tmp: &mut [usize]) -> u64 {
            let n = buf.len();
            if n <= 1 {
                return 0;
            }
            let mid = n / 2;
            let mut inv = {
                let (lo, hi) = buf.split_at_mut(mid);
                sort_count(lo, tmp) + sort_count(hi, tmp)
            };
            let (mut i, mut j) = (0, mid);
            for slot in tmp.iter_mut().take(n) {
                if i < mid && (j >= n || buf[i] <= buf[j]) {
                    *slot = buf[i];
                    i += 1;
                } else {
                    // buf[j] jumps over the mid - i remaining left elements
                    inv += (mid - i) as u64;
                    *slot = buf[j];
                    j += 1;
                }
            }
            buf.copy_from_slice(&tmp[..n]);
            inv
        }
        let mut buf = self.images.clone();
        let mut tmp = vec![0; buf.len()];
        sort_count(&mut buf, &mut tmp)
    }

    /// Materializes the inversion set: all value pairs `(a, b)` with `a < b`
    /// and `b` preceding `a` in one-line notation. Quadratic; meant for small
    /// inputs and oracles, not the hot path.
    pub fn inversion_set(&self) -> InversionSet {
        let pos = self.positions();
        let n = self.size();
        let mut pairs = BTreeSet::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                if pos[b - 1] < pos[a - 1] {
                    pairs.insert((a, b));
                }
            }
        }
        InversionSet { n, pairs }
    }

    /// Weak-order comparison: `self ⪯ q` iff the inversion set of `self` is
    /// contained in that of `q`.
    ///
    /// Uses the identity `inv(p) + inv(p⁻¹q) = inv(q)`, which holds exactly
    /// when the containment does, so the check is `O(n log n)` instead of
    /// materializing quadratic inversion sets.
    pub fn weak_leq(&self, q: &Permutation) -> Result<bool> {
        if self.size() != q.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: q.size(),
            });
        }
        let rest = self.inverse().compose(q)?;
        Ok(self.inversion_count() + rest.inversion_count() == q.inversion_count())
    }

    /// All permutations covering `self` in the weak order: one for each
    /// ascent, obtained by swapping the adjacent pair.
    pub fn upper_covers(&self) -> Vec<Permutation> {
        let mut covers = Vec::new();
        for i in 0..self.size().saturating_sub(1) {
            if self.images[i] < self.images[i + 1] {
                let mut images = self.images.clone();
                images.swap(i, i + 1);
                covers.push(Permutation { images });
            }
        }
        covers
    }

    /// Length of the longest (strictly) decreasing subsequence, the width of
    /// the permutation. `O(n log n)` patience-style greedy.
    pub fn lds_width(&self) -> usize {
        // A decreasing subsequence read right-to-left is increasing, so this
        // is the LIS length of the reversed word.
        let mut tails: Vec<usize> = Vec::new();
        for &x in self.images.iter().rev() {
            match tails.binary_search(&x) {
                // values are distinct, Err gives the insertion point
                Err(pos) if pos == tails.len() => tails.push(x),
                Err(pos) => tails[pos] = x,
                Ok(_) => unreachable!("duplicate value in a permutation"),
            }
        }
        tails.len()
    }

    /// Greedy minimum cover of the positions by increasing subsequences.
    ///
    /// Each value is appended to the chain whose last value is the largest
    /// one below it; the number of chains produced equals [`lds_width`].
    ///
    /// [`lds_width`]: Permutation::lds_width
    pub fn increasing_chain_cover(&self) -> ChainCover {
        // lasts[c] holds chain c's most recent value; chains are created in
        // order of strictly decreasing lasts, so `lasts` stays sorted
        // descending and the eligible chain is found by binary search.
        let mut lasts: Vec<usize> = Vec::new();
        let mut positions: Vec<Vec<usize>> = Vec::new();
        let mut values: Vec<Vec<usize>> = Vec::new();
        for (i, &x) in self.images.iter().enumerate() {
            // first index with lasts[idx] < x, in a descending list
            let idx = lasts.partition_point(|&last| last > x);
            if idx == lasts.len() {
                lasts.push(x);
                positions.push(vec![i + 1]);
                values.push(vec![x]);
            } else {
                lasts[idx] = x;
                positions[idx].push(i + 1);
                values[idx].push(x);
            }
        }
        ChainCover { positions, values }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses comma- or whitespace-separated images, or a compact digit
    /// string such as `24135` when every image is a single digit.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        let images: Vec<usize> = if tokens.len() == 1
            && tokens[0].len() > 1
            && tokens[0].bytes().all(|b| b.is_ascii_digit())
        {
            // compact one-line form, one digit per image
            tokens[0].bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            let mut images = Vec::with_capacity(tokens.len());
            for t in tokens {
                let v: usize = t.parse().map_err(|_| {
                    Error::InvalidPermutation(format!("cannot parse entry {t:?}"))
                })?;
                images.push(v);
            }
            images
        };
        if images.len() > MAX_PARSE_SIZE {
            return Err(Error::InvalidPermutation(format!(
                "size {} exceeds the parser cap of {MAX_PARSE_SIZE}",
                images.len()
            )));
        }
        Permutation::from_images(images)
    }
}

/// The set of inversions of a permutation, as value pairs `(a, b)`, `a < b`,
/// with `b` preceding `a` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl InversionSet {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

/// A partition of the positions of a permutation into increasing
/// subsequences: positions increase along each chain and so do the values
/// they carry. Built by [`Permutation::increasing_chain_cover`]; the chain
/// count equals the permutation's width, so the cover is minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCover {
    positions: Vec<Vec<usize>>,
    values: Vec<Vec<usize>>,
}

impl ChainCover {
    pub fn chain_count(&self) -> usize {
        self.positions.len()
    }

    /// Chains as 1-based positions, in creation order.
    pub fn positions(&self) -> &[Vec<usize>] {
        &self.positions
    }

    /// Chains as the values carried at those positions (increasing within
    /// each chain).
    pub fn values(&self) -> &[Vec<usize>] {
        &self.values
    }
}

/// Every permutation of `{1..n}`, in lexicographic order of one-line words.
/// Factorial-sized; meant for the exhaustive small-n test suites.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    assert!((1..=10).contains(&n), "exhaustive enumeration is capped at n = 10");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        if current.len() == n {
            out.push(Permutation {
                images: current.clone(),
            });
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Brute-force cap for [`weak_interval`].
pub const INTERVAL_BFS_CAP: usize = 10;

/// The interval `[p, q]` of the weak order, enumerated by BFS over upper
/// covers. Returns the empty vector when `p ⋠ q`. This is the oracle
/// counterpart of the counting reductions, so it is capped at
/// [`INTERVAL_BFS_CAP`] — interval sizes grow like `n!`.
pub fn weak_interval(p: &Permutation, q: &Permutation) -> Result<Vec<Permutation>> {
    if p.size() != q.size() {
        return Err(Error::SizeMismatch {
            left: p.size(),
            right: q.size(),
        });
    }
    if p.size() > INTERVAL_BFS_CAP {
        return Err(Error::SizeCapExceeded {
            n: p.size(),
            cap: INTERVAL_BFS_CAP,
        });
    }
    if !p.weak_leq(q)? {
        return Ok(Vec::new());
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p.clone());
    queue.push_back(p.clone());
    while let Some(r) = queue.pop_front() {
        for c in r.upper_covers() {
            if c.weak_leq(q)? && seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
