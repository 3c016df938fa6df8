//! Frame error rate estimation by Monte Carlo simulation.
//!
//! Trial `t` draws everything from stream `t` of the seed, and trials are
//! examined in index order when deciding where to stop, so results are the
//! same for any number of worker threads.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::channel::Channel;
use crate::code::CodeSpec;
use crate::decoder::{decoder_by_name, SoftInput};
use crate::error::{invalid, Result};
use crate::gf2::BitVector;
use crate::rng::{substream, GAUSSIAN_METHOD, GENERATOR};

/// Trials decoded between checks of the stopping rule.
const BATCH: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimOptions {
    /// `sc` or `scl`.
    pub decoder: String,
    pub list: usize,
    pub max_trials: u64,
    /// Stop once this many frame errors were seen; 0 disables early stopping.
    pub target_errors: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SimOptions {
    pub fn new(list: usize, max_trials: u64, target_errors: u64, seed: u64) -> Self {
        Self {
            decoder: "scl".into(),
            list,
            max_trials,
            target_errors,
            seed,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub channel: String,
    pub param: f64,
    pub list: usize,
    pub trials: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub seed: u64,
    pub wall_time: Duration,
    pub generator: &'static str,
    pub gaussian: &'static str,
}

impl SimResult {
    /// Binomial standard error of `fer`.
    pub fn std_error(&self) -> f64 {
        (self.fer * (1.0 - self.fer) / self.trials as f64).sqrt()
    }

    pub const CSV_HEADER: &'static str = "channel,param,list,trials,errors,fer,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.channel, self.param, self.list, self.trials, self.frame_errors, self.fer, self.seed
        )
    }
}

/// Runs `f` on a pool with the requested number of threads.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn trial(code: &CodeSpec, channel: &dyn Channel, seed: u64, index: u64) -> (BitVector, SoftInput) {
    let mut rng = substream(seed, index);
    let info = BitVector::from_bools((0..code.k()).map(|_| rng.gen::<bool>()));
    let c = code.encode(&info).expect("info length matches the code");
    let llr = channel.transmit(&c, &mut rng);
    (info, SoftInput::new(llr).expect("channel outputs are never NaN"))
}

pub fn run_fer(code: &CodeSpec, channel: &dyn Channel, opts: &SimOptions) -> Result<SimResult> {
    if opts.max_trials == 0 {
        return Err(invalid("maxTrials must be at least 1"));
    }
    decoder_by_name(&opts.decoder, opts.list)?;
    let start = Instant::now();
    let (trials, errors) = with_threads(opts.threads, || -> Result<(u64, u64)> {
        let mut trials = 0u64;
        let mut errors = 0u64;
        let mut next = 0u64;
        while next < opts.max_trials {
            let end = (next + BATCH).min(opts.max_trials);
            let outcomes: Vec<bool> = (next..end)
                .into_par_iter()
                .map_init(
                    || decoder_by_name(&opts.decoder, opts.list).expect("validated above"),
                    |dec, t| -> Result<bool> {
                        let (info, input) = trial(code, channel, opts.seed, t);
                        let best = dec.decode(code, &input)?;
                        Ok(code.info_bits(&best[0].u) != info)
                    },
                )
                .collect::<Result<_>>()?;
            for failed in outcomes {
                trials += 1;
                errors += failed as u64;
                if opts.target_errors > 0 && errors >= opts.target_errors {
                    return Ok((trials, errors));
                }
            }
            next = end;
        }
        Ok((trials, errors))
    })??;
    Ok(SimResult {
        channel: channel.name().to_string(),
        param: channel.param(),
        list: opts.list,
        trials,
        frame_errors: errors,
        fer: errors as f64 / trials as f64,
        seed: opts.seed,
        wall_time: start.elapsed(),
        generator: GENERATOR,
        gaussian: GAUSSIAN_METHOD,
    })
}
