//! Successive cancellation (SC) and SC list (SCL) decoding with exact
//! sum-product evaluation of the subchannel probabilities.
//!
//! Path metrics are `ln W(u_0^phi | y)`. Ties go to bit 0 and, between
//! paths, to the lexicographically smaller decision history.

mod bruteforce;
mod plan;
mod tree;

use std::cmp::Ordering;

use crate::code::CodeSpec;
use crate::error::{invalid, Error, Result};
use crate::gf2::{lex_cmp_words, BitVector};

pub use bruteforce::{subchannel_prob_bruteforce, symbol_probabilities};
use tree::{Leaves, PathState};

/// Channel LLRs `ln W(0|y_i) / W(1|y_i)`; `+inf` is a known 0, `-inf` a known 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SoftInput {
    llr: Vec<f64>,
}

impl SoftInput {
    pub fn new(llr: Vec<f64>) -> Result<Self> {
        if let Some(i) = llr.iter().position(|v| v.is_nan()) {
            return Err(invalid(format!("LLR {i} is NaN")));
        }
        Ok(Self { llr })
    }

    /// Noiseless observation of `c`.
    pub fn noiseless(c: &BitVector) -> Self {
        Self {
            llr: c.iter().map(|b| if b { f64::NEG_INFINITY } else { f64::INFINITY }).collect(),
        }
    }

    pub fn llr(&self) -> &[f64] {
        &self.llr
    }

    pub fn len(&self) -> usize {
        self.llr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.llr.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    /// Decided input vector `u_0^{n-1}`.
    pub u: BitVector,
    pub metric: f64,
}

/// Reusable decoding workspace.
#[derive(Debug, Default)]
pub struct Workspace {
    leaves: Leaves,
    scratch: Vec<u8>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }
}

fn check_input(n: usize, input: &SoftInput) -> Result<()> {
    if input.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: input.len(),
        });
    }
    Ok(())
}

fn checked(m: [f64; 2], phase: usize) -> Result<[f64; 2]> {
    if m.iter().any(|v| v.is_nan()) {
        return Err(Error::NonFinite { phase });
    }
    Ok(m)
}

fn frozen_value(path: &PathState, participants: &[usize]) -> bool {
    participants.iter().fold(false, |acc, &j| acc ^ path.decision(j))
}

fn to_candidate(path: &PathState, n: usize) -> Candidate {
    Candidate {
        u: BitVector::from_bools((0..n).map(|i| path.decision(i))),
        metric: path.metric,
    }
}

/// SC decoding; returns the decided `u` and its metric.
pub fn sc_decode_with(code: &CodeSpec, input: &SoftInput, ws: &mut Workspace) -> Result<Candidate> {
    let n = code.n();
    check_input(n, input)?;
    ws.leaves.load(input.llr());
    let mut path = PathState::new(n);
    for phi in 0..n {
        let m = checked(path.marginals(&ws.leaves), phi)?;
        let bit = match code.constraint(phi) {
            Some(list) => frozen_value(&path, list),
            None => m[1] > m[0],
        };
        path.push(bit, m[bit as usize], &mut ws.scratch);
    }
    Ok(to_candidate(&path, n))
}

pub fn sc_decode(code: &CodeSpec, input: &SoftInput) -> Result<BitVector> {
    Ok(sc_decode_with(code, input, &mut Workspace::new())?.u)
}

/// SCL decoding; candidates best first.
pub fn scl_decode_with(code: &CodeSpec, input: &SoftInput, list: usize, ws: &mut Workspace) -> Result<Vec<Candidate>> {
    if list == 0 {
        return Err(invalid("list size must be at least 1"));
    }
    let n = code.n();
    check_input(n, input)?;
    ws.leaves.load(input.llr());
    let mut paths = vec![PathState::new(n)];
    let mut forks: Vec<(usize, bool, f64)> = Vec::with_capacity(2 * list);
    for phi in 0..n {
        if let Some(participants) = code.constraint(phi) {
            for path in paths.iter_mut() {
                let m = checked(path.marginals(&ws.leaves), phi)?;
                let bit = frozen_value(path, participants);
                path.push(bit, m[bit as usize], &mut ws.scratch);
            }
            continue;
        }
        forks.clear();
        for (i, path) in paths.iter_mut().enumerate() {
            let m = checked(path.marginals(&ws.leaves), phi)?;
            forks.push((i, false, m[0]));
            forks.push((i, true, m[1]));
        }
        if forks.len() > list {
            forks.sort_by(|a, b| {
                b.2.total_cmp(&a.2).then_with(|| match a.0.cmp(&b.0) {
                    Ordering::Equal => a.1.cmp(&b.1),
                    _ => lex_cmp_words(paths[a.0].decisions(), paths[b.0].decisions()).then(a.1.cmp(&b.1)),
                })
            });
            forks.truncate(list);
        }
        let next: Vec<(PathState, bool, f64)> = forks.iter().map(|&(i, b, m)| (paths[i].clone(), b, m)).collect();
        paths.clear();
        for (mut path, b, m) in next {
            path.push(b, m, &mut ws.scratch);
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| b.metric.total_cmp(&a.metric).then_with(|| lex_cmp_words(a.decisions(), b.decisions())));
    Ok(paths.iter().map(|p| to_candidate(p, n)).collect())
}

pub fn scl_decode(code: &CodeSpec, input: &SoftInput, list: usize) -> Result<Vec<Candidate>> {
    scl_decode_with(code, input, list, &mut Workspace::new())
}

/// Genie-aided pass: `ln W(u_0^{phi-1}, b)` for every phase with the true
/// `u` fed back as decisions.
pub fn genie_metrics(input: &SoftInput, u: &BitVector, ws: &mut Workspace) -> Result<Vec<[f64; 2]>> {
    let n = u.len();
    crate::transform::check_power_of_two(n)?;
    check_input(n, input)?;
    ws.leaves.load(input.llr());
    let mut path = PathState::new(n);
    let mut out = Vec::with_capacity(n);
    for phi in 0..n {
        let m = checked(path.marginals(&ws.leaves), phi)?;
        let bit = u.get(phi);
        path.push(bit, m[bit as usize], &mut ws.scratch);
        out.push(m);
    }
    Ok(out)
}

/// A decoding algorithm selectable by name.
pub trait Decoder: Send {
    fn name(&self) -> &'static str;
    fn list_size(&self) -> usize;
    /// Candidates best first; SC returns exactly one.
    fn decode(&mut self, code: &CodeSpec, input: &SoftInput) -> Result<Vec<Candidate>>;
}

#[derive(Debug, Default)]
pub struct ScDecoder {
    ws: Workspace,
}

impl Decoder for ScDecoder {
    fn name(&self) -> &'static str {
        "sc"
    }

    fn list_size(&self) -> usize {
        1
    }

    fn decode(&mut self, code: &CodeSpec, input: &SoftInput) -> Result<Vec<Candidate>> {
        Ok(vec![sc_decode_with(code, input, &mut self.ws)?])
    }
}

#[derive(Debug)]
pub struct SclDecoder {
    list: usize,
    ws: Workspace,
}

impl SclDecoder {
    pub fn new(list: usize) -> Result<Self> {
        if list == 0 {
            return Err(invalid("list size must be at least 1"));
        }
        Ok(Self {
            list,
            ws: Workspace::new(),
        })
    }
}

impl Decoder for SclDecoder {
    fn name(&self) -> &'static str {
        "scl"
    }

    fn list_size(&self) -> usize {
        self.list
    }

    fn decode(&mut self, code: &CodeSpec, input: &SoftInput) -> Result<Vec<Candidate>> {
        scl_decode_with(code, input, self.list, &mut self.ws)
    }
}

/// Names accepted by [`decoder_by_name`].
pub const DECODERS: &[&str] = &["sc", "scl"];

pub fn decoder_by_name(name: &str, list: usize) -> Result<Box<dyn Decoder>> {
    match name {
        "sc" => Ok(Box::new(ScDecoder::default())),
        "scl" => Ok(Box::new(SclDecoder::new(list)?)),
        other => Err(invalid(format!("unknown decoder '{other}' (expected one of {DECODERS:?})"))),
    }
}
