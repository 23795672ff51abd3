//! Random-permutation experiments: width statistics, concentration tails,
//! and DP cost scaling, with CSV output.
//!
//! Reproducibility contract: every sample draws from its own stream derived
//! from `(seed, n, sample index)`, so results are independent of evaluation
//! order, and all aggregate statistics except wall-clock time are computed
//! from integer sufficient statistics — identical inputs give byte-identical
//! CSV apart from the `mean_runtime_s` column.

use std::io::{self, Write};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::count::{count_le_width_dp_with, DEFAULT_STATE_BUDGET};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poset::{count_le_bruteforce, phi};

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The random stream for one sample: a ChaCha stream keyed by
/// `(seed, n, sample_index)` through a splitmix64 expansion. Samples are
/// reproducible individually, independent of how many ran before them.
pub fn sample_rng(seed: u64, n: usize, sample_index: u64) -> ChaCha8Rng {
    let mut state = seed
        ^ (n as u64).wrapping_mul(0xA076_1D64_78BD_642F)
        ^ sample_index.wrapping_mul(0xE703_7ED1_A0B4_28DB);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// A uniformly random permutation of `{1..n}` from the given stream.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    assert!(n >= 1, "permutations have size at least 1");
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle preserves bijectivity")
}

/// One aggregated experiment row. `alpha`/`tail_fraction` are present only
/// for concentration runs, the cost columns only for scaling runs; absent
/// values serialize as empty CSV fields. `budget_exhausted` counts samples
/// whose DP hit the state budget (they are excluded from the cost means); it
/// is diagnostic and not a CSV column.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub mean_lds: f64,
    pub mean_ratio: f64,
    pub stddev: f64,
    pub alpha: Option<f64>,
    pub tail_fraction: Option<f64>,
    pub mean_log2_states: Option<f64>,
    pub mean_runtime_s: Option<f64>,
    pub budget_exhausted: u64,
}

impl ExperimentRow {
    /// `mean_log2_states / (√n · log₂ n)`: the measured exponent relative to
    /// the `√n log n` scale expected of the width DP on random inputs.
    pub fn scaling_ratio(&self) -> Option<f64> {
        let states = self.mean_log2_states?;
        if self.n < 2 {
            return None;
        }
        let n = self.n as f64;
        Some(states / (n.sqrt() * n.log2()))
    }
}

/// Widths of `samples` independent random permutations of size `n`.
fn sample_widths(n: usize, samples: u64, seed: u64) -> Vec<u32> {
    (0..samples)
        .map(|i| {
            let mut rng = sample_rng(seed, n, i);
            random_permutation(n, &mut rng).lds_width() as u32
        })
        .collect()
}

/// Population mean and standard deviation from integer sufficient
/// statistics (order-independent, exactly reproducible).
fn mean_stddev(widths: &[u32]) -> (f64, f64) {
    let count = widths.len() as u64;
    let sum: u64 = widths.iter().map(|&w| w as u64).sum();
    let sumsq: u128 = widths.iter().map(|&w| (w as u128) * (w as u128)).sum();
    let mean = sum as f64 / count as f64;
    let variance = (sumsq as f64 / count as f64 - mean * mean).max(0.0);
    (mean, variance.sqrt())
}

fn base_row(n: usize, samples: u64, seed: u64, widths: &[u32]) -> ExperimentRow {
    let (mean_lds, stddev) = mean_stddev(widths);
    ExperimentRow {
        n,
        samples,
        seed,
        mean_lds,
        mean_ratio: mean_lds / (n as f64).sqrt(),
        stddev,
        alpha: None,
        tail_fraction: None,
        mean_log2_states: None,
        mean_runtime_s: None,
        budget_exhausted: 0,
    }
}

/// Width statistics of random permutations: mean width, mean width/√n, and
/// standard deviation over the sample.
pub fn width_statistics(n: usize, samples: u64, seed: u64) -> ExperimentRow {
    assert!(samples >= 1, "at least one sample required");
    let widths = sample_widths(n, samples, seed);
    base_row(n, samples, seed, &widths)
}

/// Width concentration: the fraction of samples whose width deviates from
/// the sample mean by at least `n^alpha`. Requires `1/3 < alpha ≤ 1/2`, the
/// regime the concentration bound speaks about.
pub fn concentration_report(
    n: usize,
    samples: u64,
    alpha: f64,
    seed: u64,
) -> Result<ExperimentRow> {
    assert!(samples >= 1, "at least one sample required");
    if !(alpha > 1.0 / 3.0 && alpha <= 0.5) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let widths = sample_widths(n, samples, seed);
    let mut row = base_row(n, samples, seed, &widths);
    let threshold = (n as f64).powf(alpha);
    let tail = widths
        .iter()
        .filter(|&&w| (w as f64 - row.mean_lds).abs() >= threshold)
        .count();
    row.alpha = Some(alpha);
    row.tail_fraction = Some(tail as f64 / samples as f64);
    Ok(row)
}

/// Runs the width DP on random permutations for each requested size,
/// recording widths, DP states (log₂), and wall time. Budget-exhausted
/// samples are counted in `budget_exhausted` and excluded from the cost
/// means; any other error aborts. At oracle sizes (n ≤ 10) every count is
/// cross-checked against brute force.
pub fn runtime_scaling_experiment(
    n_values: &[usize],
    samples_per_n: u64,
    seed: u64,
) -> Result<Vec<ExperimentRow>> {
    runtime_scaling_experiment_with(n_values, samples_per_n, seed, DEFAULT_STATE_BUDGET)
}

pub fn runtime_scaling_experiment_with(
    n_values: &[usize],
    samples_per_n: u64,
    seed: u64,
    budget: u64,
) -> Result<Vec<ExperimentRow>> {
    assert!(samples_per_n >= 1, "at least one sample required");
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let mut widths = Vec::with_capacity(samples_per_n as usize);
        let mut log2_states_sum = 0.0;
        let mut runtime_sum = 0.0;
        let mut completed = 0u64;
        let mut exhausted = 0u64;
        for i in 0..samples_per_n {
            let mut rng = sample_rng(seed, n, i);
            let perm = random_permutation(n, &mut rng);
            widths.push(perm.lds_width() as u32);
            let start = Instant::now();
            match count_le_width_dp_with(&perm, budget) {
                Ok(outcome) => {
                    runtime_sum += start.elapsed().as_secs_f64();
                    log2_states_sum += (outcome.states_stored as f64).log2();
                    completed += 1;
                    if n <= 10 {
                        let oracle = count_le_bruteforce(&phi(&perm))?;
                        assert_eq!(outcome.count, oracle, "DP disagrees with oracle on {perm}");
                    }
                }
                Err(Error::StateBudgetExceeded { .. }) => exhausted += 1,
                Err(other) => return Err(other),
            }
        }
        let mut row = base_row(n, samples_per_n, seed, &widths);
        row.budget_exhausted = exhausted;
        if completed > 0 {
            row.mean_log2_states = Some(log2_states_sum / completed as f64);
            row.mean_runtime_s = Some(runtime_sum / completed as f64);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// CSV header shared by all experiment outputs.
pub const CSV_HEADER: &str =
    "n,samples,seed,mean_lds,mean_ratio,stddev,alpha,tail_fraction,mean_log2_states,mean_runtime_s";

fn csv_float(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.6}"),
        None => String::new(),
    }
}

/// Writes rows as CSV with a mandatory header; floats use six decimals with
/// a `.` separator, absent columns are empty.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6},{},{},{},{}",
            r.n,
            r.samples,
            r.seed,
            r.mean_lds,
            r.mean_ratio,
            r.stddev,
            csv_float(r.alpha),
            csv_float(r.tail_fraction),
            csv_float(r.mean_log2_states),
            csv_float(r.mean_runtime_s),
        )?;
    }
    Ok(())
}

/// Convenience: the full CSV document as a string.
pub fn csv_string(rows: &[ExperimentRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
