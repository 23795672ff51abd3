//! Substitution (block) decomposition of permutations.
//!
//! A *block* is a set of consecutive positions whose values form a
//! contiguous range; a permutation with only trivial blocks is *simple*.
//! Every permutation is an inflation of a unique simple skeleton, and
//! iterating that factorization yields the decomposition tree built by
//! [`block_decompose`].
//!
//! Node convention: monotone skeletons are flattened into n-ary [`Series`]
//! (increasing skeleton) and [`Parallel`] (decreasing skeleton) nodes, so a
//! Series node never has a Series child and likewise for Parallel. A
//! non-monotone simple skeleton of arity ≥ 4 becomes an [`Indecomposable`]
//! node. The tree's index blocks then coincide with the strong modules of the
//! permutation's poset, which is what the counting recursion wants: Series
//! children stack, Parallel children interleave freely, and Indecomposable
//! skeletons need a weighted count.
//!
//! [`Series`]: NodeKind::Series
//! [`Parallel`]: NodeKind::Parallel
//! [`Indecomposable`]: NodeKind::Indecomposable

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Series,
    Parallel,
    Indecomposable,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Series => "series",
            NodeKind::Parallel => "parallel",
            NodeKind::Indecomposable => "indecomposable",
        }
    }
}

/// A node of the decomposition tree. Children are in position order; `span`
/// is the size of the sub-permutation the node represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    kind: NodeKind,
    /// The simple non-monotone skeleton; present exactly on Indecomposable
    /// nodes (Series/Parallel skeletons are implicitly monotone).
    skeleton: Option<Permutation>,
    children: Vec<DecompositionTree>,
    span: usize,
}

impl DecompositionTree {
    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn skeleton(&self) -> Option<&Permutation> {
        self.skeleton.as_ref()
    }

    pub fn children(&self) -> &[DecompositionTree] {
        &self.children
    }

    pub fn span(&self) -> usize {
        self.span
    }

    /// Sizes of the direct children, in position order.
    pub fn child_spans(&self) -> Vec<usize> {
        self.children.iter().map(|c| c.span).collect()
    }
}

impl Serialize for DecompositionTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = 3 + usize::from(self.skeleton.is_some());
        let mut st = serializer.serialize_struct("DecompositionTree", fields)?;
        st.serialize_field("kind", self.kind.name())?;
        if let Some(sk) = &self.skeleton {
            st.serialize_field("skeleton", sk.images())?;
        }
        st.serialize_field("span", &self.span)?;
        st.serialize_field("children", &self.children)?;
        st.end()
    }
}

impl fmt::Display for DecompositionTree {
    /// Indented one-node-per-line rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rec(
            node: &DecompositionTree,
            depth: usize,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            write!(f, "{:indent$}", "", indent = 2 * depth)?;
            match node.kind {
                NodeKind::Leaf => writeln!(f, "leaf")?,
                NodeKind::Indecomposable => writeln!(
                    f,
                    "indecomposable {} (span {})",
                    node.skeleton.as_ref().expect("indecomposable skeleton"),
                    node.span
                )?,
                kind => writeln!(f, "{} (span {})", kind.name(), node.span)?,
            }
            for child in &node.children {
                rec(child, depth + 1, f)?;
            }
            Ok(())
        }
        rec(self, 0, f)
    }
}

/// The inflation σ[τ₁,…,τₘ]: each entry of `skeleton` is replaced by a
/// contiguous copy of the corresponding part, value ranges ordered like the
/// skeleton's entries.
pub fn inflate(skeleton: &Permutation, parts: &[Permutation]) -> Result<Permutation> {
    let m = skeleton.size();
    if parts.len() != m {
        return Err(Error::ArityMismatch {
            skeleton: m,
            parts: parts.len(),
        });
    }
    // offset[j] = total size of parts whose skeleton value is below σ(j+1)
    let mut sizes_by_value = vec![0usize; m];
    for (j, part) in parts.iter().enumerate() {
        sizes_by_value[skeleton.apply(j + 1) - 1] = part.size();
    }
    let mut below = 0;
    let offsets_by_value: Vec<usize> = sizes_by_value
        .iter()
        .map(|&s| {
            let off = below;
            below += s;
            off
        })
        .collect();
    let mut images = Vec::with_capacity(below);
    for (j, part) in parts.iter().enumerate() {
        let off = offsets_by_value[skeleton.apply(j + 1) - 1];
        images.extend(part.images().iter().map(|&v| off + v));
    }
    Permutation::from_images(images)
}

/// All blocks of `p` as 1-based inclusive index intervals, sorted. Always
/// includes the singletons and `[1, n]`. O(n²) interval scan.
pub fn enumerate_blocks(p: &Permutation) -> Vec<(usize, usize)> {
    let w = p.images();
    let n = w.len();
    let mut blocks = Vec::new();
    for i in 0..n {
        let (mut lo, mut hi) = (w[i], w[i]);
        for (j, &x) in w.iter().enumerate().skip(i) {
            lo = lo.min(x);
            hi = hi.max(x);
            if hi - lo == j - i {
                blocks.push((i + 1, j + 1));
            }
        }
    }
    blocks
}

/// Whether the only blocks of `p` are the trivial ones (size 1 and size n).
/// Sizes 1 and 2 are simple by convention.
pub fn is_simple(p: &Permutation) -> bool {
    let w = p.images();
    let n = w.len();
    for i in 0..n {
        let (mut lo, mut hi) = (w[i], w[i]);
        for (j, &x) in w.iter().enumerate().skip(i) {
            lo = lo.min(x);
            hi = hi.max(x);
            let len = j - i + 1;
            if hi - lo == j - i && len > 1 && len < n {
                return false;
            }
        }
    }
    true
}

/// Positions `i < n` (1-based) after which the word splits as a direct sum:
/// the first `i` values are exactly `{1..i}`.
fn series_cuts(w: &[usize]) -> Vec<usize> {
    let mut cuts = Vec::new();
    let mut running_max = 0;
    for (i, &v) in w.iter().enumerate().take(w.len() - 1) {
        running_max = running_max.max(v);
        if running_max == i + 1 {
            cuts.push(i + 1);
        }
    }
    cuts
}

/// Positions `i < n` after which the word splits as a skew sum: the first
/// `i` values are exactly the top `i` values.
fn parallel_cuts(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut cuts = Vec::new();
    let mut running_min = usize::MAX;
    for (i, &v) in w.iter().enumerate().take(n - 1) {
        running_min = running_min.min(v);
        if running_min == n - i {
            cuts.push(i + 1);
        }
    }
    cuts
}

/// The standardization of a window of distinct values: values mapped onto
/// `{1..k}` preserving relative order.
fn standardize(window: &[usize]) -> Permutation {
    let mut sorted: Vec<usize> = window.to_vec();
    sorted.sort_unstable();
    let images = window
        .iter()
        .map(|v| sorted.binary_search(v).expect("window value") + 1)
        .collect();
    Permutation::from_images(images).expect("standardization of distinct values")
}

/// Kind of the top node of `p`'s decomposition without building a tree:
/// Series iff it splits as a direct sum, Parallel iff as a skew sum,
/// Indecomposable otherwise. Size 1 is a Leaf.
pub fn classify_node(p: &Permutation) -> NodeKind {
    let w = p.images();
    if w.len() == 1 {
        NodeKind::Leaf
    } else if !series_cuts(w).is_empty() {
        NodeKind::Series
    } else if !parallel_cuts(w).is_empty() {
        NodeKind::Parallel
    } else {
        NodeKind::Indecomposable
    }
}

/// The decomposition tree of `p`. Re-inflating the tree reproduces `p`
/// exactly; see [`reinflate`].
pub fn block_decompose(p: &Permutation) -> DecompositionTree {
    let w = p.images();
    let n = w.len();
    if n == 1 {
        return DecompositionTree {
            kind: NodeKind::Leaf,
            skeleton: None,
            children: Vec::new(),
            span: 1,
        };
    }

    let series = series_cuts(w);
    if !series.is_empty() {
        // Cutting at every split point maximizes arity, so no child can
        // itself split as a direct sum (Gallai flattening).
        return assemble(NodeKind::Series, None, segments(w, &series), n);
    }
    let parallel = parallel_cuts(w);
    if !parallel.is_empty() {
        return assemble(NodeKind::Parallel, None, segments(w, &parallel), n);
    }

    // Neither sum splits: the maximal proper blocks are pairwise disjoint
    // and tile the word, so the greedy left-to-right longest proper block is
    // exactly the canonical partition.
    let mut boundaries = Vec::new(); // cut positions, 1-based, excluding n
    let mut reps = Vec::new(); // one value per block, for the skeleton
    let mut start = 0;
    while start < n {
        let mut end = start; // singleton block always works
        let (mut lo, mut hi) = (w[start], w[start]);
        let mut best_lo = w[start];
        for (j, &x) in w.iter().enumerate().skip(start) {
            lo = lo.min(x);
            hi = hi.max(x);
            if hi - lo == j - start && j - start + 1 < n {
                end = j;
                best_lo = lo;
            }
        }
        reps.push(best_lo);
        if end + 1 < n {
            boundaries.push(end + 1);
        }
        start = end + 1;
    }
    let skeleton = standardize(&reps);
    debug_assert!(is_simple(&skeleton) && skeleton.size() >= 4);
    assemble(
        NodeKind::Indecomposable,
        Some(skeleton),
        segments(w, &boundaries),
        n,
    )
}

/// Splits `w` at the given 1-based cut positions and standardizes each
/// segment.
fn segments(w: &[usize], cuts: &[usize]) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    for &cut in cuts.iter().chain(std::iter::once(&w.len())) {
        out.push(standardize(&w[start..cut]));
        start = cut;
    }
    out
}

fn assemble(
    kind: NodeKind,
    skeleton: Option<Permutation>,
    parts: Vec<Permutation>,
    span: usize,
) -> DecompositionTree {
    let children = parts.iter().map(block_decompose).collect();
    DecompositionTree {
        kind,
        skeleton,
        children,
        span,
    }
}

/// Rebuilds the permutation a decomposition tree represents.
pub fn reinflate(tree: &DecompositionTree) -> Permutation {
    match tree.kind {
        NodeKind::Leaf => Permutation::identity(1),
        _ => {
            let arity = tree.children.len();
            let skeleton = match tree.kind {
                NodeKind::Series => Permutation::identity(arity),
                NodeKind::Parallel => Permutation::reversal(arity),
                NodeKind::Indecomposable => {
                    tree.skeleton.clone().expect("indecomposable skeleton")
                }
                NodeKind::Leaf => unreachable!(),
            };
            let parts: Vec<Permutation> = tree.children.iter().map(reinflate).collect();
            inflate(&skeleton, &parts).expect("tree arity matches")
        }
    }
}

/// Intrinsic width: the maximum width over the tree's indecomposable
/// skeletons, or 1 when there are none. Equals 1 exactly on separable
/// permutations.
pub fn intrinsic_width(p: &Permutation) -> usize {
    fn walk(node: &DecompositionTree, acc: &mut usize) {
        if let Some(sk) = &node.skeleton {
            *acc = (*acc).max(sk.lds_width());
        }
        for child in &node.children {
            walk(child, acc);
        }
    }
    let mut acc = 1;
    walk(&block_decompose(p), &mut acc);
    acc
}
