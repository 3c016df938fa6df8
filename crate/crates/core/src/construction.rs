//! Subchannel reliability estimation and code construction.
//!
//! A convolutional polar subcode is built in two steps: the `n - k - f`
//! least reliable subchannels are frozen to zero, then `f` further indices
//! are chosen by subchannel weight and frozen to random linear combinations
//! of earlier information symbols.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::Channel;
use crate::code::CodeSpec;
use crate::decoder::{genie_metrics, SoftInput, Workspace};
use crate::distance::SubchannelWeights;
use crate::error::{invalid, Error, Result};
use crate::gf2::BitVector;
use crate::rng::substream;
use crate::sim::with_threads;
use crate::transform::{check_power_of_two, encode};

/// Metric differences up to this size count as ties in genie-aided estimation.
pub const TIE_TOLERANCE: f64 = 1e-9;

const BATCH: u64 = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityProfile {
    pub n: usize,
    /// Per-phase error probability of the genie-aided decision.
    pub err_prob: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

impl ReliabilityProfile {
    /// Binomial standard error of `err_prob[i]`.
    pub fn std_error(&self, i: usize) -> f64 {
        let p = self.err_prob[i];
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Indices from least to most reliable; equal estimates keep index order.
    pub fn worst_first(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| self.err_prob[b].total_cmp(&self.err_prob[a]).then(a.cmp(&b)));
        order
    }
}

fn genie_trial(n: usize, channel: &dyn Channel, seed: u64, t: u64, ws: &mut Workspace) -> Result<Vec<bool>> {
    let mut rng = substream(seed, t);
    let u = BitVector::from_bools((0..n).map(|_| rng.gen::<bool>()));
    let c = encode(&u)?;
    let input = SoftInput::new(channel.transmit(&c, &mut rng))?;
    let metrics = genie_metrics(&input, &u, ws)?;
    Ok(metrics
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let truth = u.get(i) as usize;
            let margin = m[truth] - m[1 - truth];
            if margin.is_nan() || margin.abs() <= TIE_TOLERANCE {
                rng.gen_bool(0.5)
            } else {
                margin < 0.0
            }
        })
        .collect())
}

/// Monte Carlo estimate of per-phase decision error probabilities of an SC
/// decoder that is told the correct earlier decisions.
pub fn genie_reliability(
    n: usize,
    channel: &dyn Channel,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<ReliabilityProfile> {
    check_power_of_two(n)?;
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let counts = with_threads(threads, || -> Result<Vec<u64>> {
        let mut counts = vec![0u64; n];
        let mut next = 0;
        while next < trials {
            let end = (next + BATCH).min(trials);
            let batch = (next..end)
                .into_par_iter()
                .map_init(Workspace::new, |ws, t| genie_trial(n, channel, seed, t, ws))
                .try_fold(
                    || vec![0u64; n],
                    |mut acc, errs| -> Result<Vec<u64>> {
                        for (a, e) in acc.iter_mut().zip(errs?) {
                            *a += e as u64;
                        }
                        Ok(acc)
                    },
                )
                .try_reduce(
                    || vec![0u64; n],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        Ok(a)
                    },
                )?;
            counts.iter_mut().zip(batch).for_each(|(x, y)| *x += y);
            next = end;
        }
        Ok(counts)
    })??;
    Ok(ReliabilityProfile {
        n,
        err_prob: counts.iter().map(|&c| c as f64 / trials as f64).collect(),
        trials,
        seed,
    })
}

fn check_profile(n: usize, prof: &ReliabilityProfile) -> Result<()> {
    check_power_of_two(n)?;
    if prof.n != n || prof.err_prob.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: prof.err_prob.len(),
        });
    }
    Ok(())
}

/// Plain code: the `n - k` least reliable subchannels frozen to zero.
pub fn build_cvpc(n: usize, k: usize, prof: &ReliabilityProfile) -> Result<CodeSpec> {
    check_profile(n, prof)?;
    if k == 0 || k > n {
        return Err(invalid(format!("dimension {k} outside [1, {n}]")));
    }
    let frozen = prof.worst_first().into_iter().take(n - k).map(|i| (i, Vec::new())).collect();
    CodeSpec::new(n, 0, frozen)
}

/// Picks the dynamically frozen indices among the candidates.
pub trait DynamicSelection: Send + Sync {
    fn name(&self) -> &'static str;
    fn select(&self, candidates: &[usize], weights: &SubchannelWeights, f: usize) -> Vec<usize>;
}

/// Minimum weight first, larger index first among equal weights.
#[derive(Clone, Copy, Debug, Default)]
pub struct LargestIndex;

/// Minimum weight first, smaller index first among equal weights.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmallestIndex;

impl DynamicSelection for LargestIndex {
    fn name(&self) -> &'static str {
        "largest-index"
    }

    fn select(&self, candidates: &[usize], weights: &SubchannelWeights, f: usize) -> Vec<usize> {
        let mut c = candidates.to_vec();
        c.sort_by(|&a, &b| weights.d[a].cmp(&weights.d[b]).then(b.cmp(&a)));
        c.truncate(f);
        c
    }
}

impl DynamicSelection for SmallestIndex {
    fn name(&self) -> &'static str {
        "smallest-index"
    }

    fn select(&self, candidates: &[usize], weights: &SubchannelWeights, f: usize) -> Vec<usize> {
        let mut c = candidates.to_vec();
        c.sort_by(|&a, &b| weights.d[a].cmp(&weights.d[b]).then(a.cmp(&b)));
        c.truncate(f);
        c
    }
}

/// Names accepted by [`selection_by_name`].
pub const SELECTIONS: &[&str] = &["largest-index", "smallest-index"];

pub fn selection_by_name(name: &str) -> Result<Box<dyn DynamicSelection>> {
    match name {
        "largest-index" => Ok(Box::new(LargestIndex)),
        "smallest-index" => Ok(Box::new(SmallestIndex)),
        other => Err(invalid(format!("unknown selection '{other}' (expected one of {SELECTIONS:?})"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvpsBuild {
    pub code: CodeSpec,
    /// Selected dynamic indices whose constraint came out empty (no earlier
    /// information symbol, or every coefficient drawn zero); they act as static.
    pub degenerate: Vec<usize>,
}

pub fn build_cvps(
    n: usize,
    k: usize,
    f: usize,
    prof: &ReliabilityProfile,
    weights: &SubchannelWeights,
    seed: u64,
) -> Result<CvpsBuild> {
    build_cvps_with(n, k, f, prof, weights, seed, &LargestIndex)
}

pub fn build_cvps_with(
    n: usize,
    k: usize,
    f: usize,
    prof: &ReliabilityProfile,
    weights: &SubchannelWeights,
    seed: u64,
    selection: &dyn DynamicSelection,
) -> Result<CvpsBuild> {
    check_profile(n, prof)?;
    if k == 0 || k > n {
        return Err(invalid(format!("dimension {k} outside [1, {n}]")));
    }
    if f + k > n {
        return Err(invalid(format!("f + k = {} exceeds n = {n}", f + k)));
    }
    if weights.n != n || weights.d.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: weights.d.len(),
        });
    }
    if f == 0 {
        return Ok(CvpsBuild {
            code: build_cvpc(n, k, prof)?,
            degenerate: Vec::new(),
        });
    }
    let order = prof.worst_first();
    let statics = &order[..n - k - f];
    let mut rest: Vec<usize> = order[n - k - f..].to_vec();
    rest.sort_unstable();
    let mut dynamic = selection.select(&rest, weights, f);
    dynamic.sort_unstable();
    let info: Vec<usize> = rest.iter().copied().filter(|i| !dynamic.contains(i)).collect();

    let mut frozen: BTreeMap<usize, Vec<usize>> = statics.iter().map(|&i| (i, Vec::new())).collect();
    let mut rng = substream(seed, 0);
    let mut degenerate = Vec::new();
    for &i in &dynamic {
        let list: Vec<usize> = info
            .iter()
            .copied()
            .take_while(|&j| j < i)
            .filter(|_| rng.gen::<bool>())
            .collect();
        if list.is_empty() {
            degenerate.push(i);
        }
        frozen.insert(i, list);
    }
    Ok(CvpsBuild {
        code: CodeSpec::new(n, seed, frozen)?,
        degenerate,
    })
}
