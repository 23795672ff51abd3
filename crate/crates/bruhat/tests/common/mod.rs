//! Shared generators for the integration suites.

use bruhat::{inflate, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn p(text: &str) -> Permutation {
    text.parse().unwrap()
}

/// A uniformly random separable permutation builder: recursive direct/skew
/// sums of random arity. Intrinsic width of the result is always 1.
pub fn random_separable(n: usize, rng: &mut impl Rng) -> Permutation {
    if n == 1 {
        return Permutation::identity(1);
    }
    let arity = rng.gen_range(2..=n.min(4));
    // a random composition of n into `arity` positive parts
    let mut interior: Vec<usize> = (1..n).collect();
    interior.shuffle(rng);
    let mut cuts: Vec<usize> = interior[..arity - 1].to_vec();
    cuts.sort_unstable();
    cuts.push(n);
    let mut parts = Vec::with_capacity(arity);
    let mut start = 0;
    for cut in cuts {
        parts.push(random_separable(cut - start, rng));
        start = cut;
    }
    let skeleton = if rng.gen_bool(0.5) {
        Permutation::identity(arity)
    } else {
        Permutation::reversal(arity)
    };
    inflate(&skeleton, &parts).unwrap()
}

/// A random permutation that is a union of `k` increasing subsequences, so
/// its width is at most `k`: shuffle the values, chop them into `k` sorted
/// chunks, and interleave the chunks uniformly.
pub fn random_bounded_width(n: usize, k: usize, rng: &mut impl Rng) -> Permutation {
    assert!(k >= 1 && k <= n);
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    let base = n / k;
    let extra = n % k;
    let mut chains: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        let mut chunk = values[start..start + len].to_vec();
        chunk.sort_unstable();
        chains.push(chunk);
        start += len;
    }
    let mut labels: Vec<usize> = (0..k)
        .flat_map(|i| std::iter::repeat_n(i, chains[i].len()))
        .collect();
    labels.shuffle(rng);
    let mut next = vec![0usize; k];
    let images = labels
        .into_iter()
        .map(|l| {
            let v = chains[l][next[l]];
            next[l] += 1;
            v
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// Brute-force classical pattern containment (choose positions, compare
/// relative order).
pub fn contains_pattern(haystack: &Permutation, pattern: &Permutation) -> bool {
    fn rec(w: &[usize], t: &[usize], chosen: &mut Vec<usize>, from: usize) -> bool {
        if chosen.len() == t.len() {
            let vals: Vec<usize> = chosen.iter().map(|&i| w[i]).collect();
            return (0..t.len())
                .all(|a| (a + 1..t.len()).all(|b| (vals[a] < vals[b]) == (t[a] < t[b])));
        }
        for i in from..w.len() {
            chosen.push(i);
            if rec(w, t, chosen, i + 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let k = pattern.size();
    if k > haystack.size() {
        return false;
    }
    rec(
        haystack.images(),
        pattern.images(),
        &mut Vec::with_capacity(k),
        0,
    )
}
