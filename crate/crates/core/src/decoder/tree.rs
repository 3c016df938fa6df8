//! Per-path decoding state: the tree of partial joint probabilities.
//!
//! Depth `d` holds `2^d` nodes of length `n / 2^d`; node `j` at depth `d`
//! has children `2j` (first half of its output block) and `2j + 1`. The
//! `n` leaves are the channel outputs and are shared by all paths. All nodes
//! of one depth always know the same number of their inputs.
//!
//! Window values are linear probabilities rescaled so that the largest is 1;
//! the natural log of the removed factor is carried separately.

use std::rc::Rc;

use super::plan::plans;

#[derive(Clone, Debug)]
struct Level {
    len: usize,
    known: usize,
    /// `known` value the windows were computed for.
    fresh_at: Option<usize>,
    hist: Vec<u8>,
    lin: Vec<[f64; 8]>,
    scale: Vec<f64>,
}

impl Level {
    fn new(nodes: usize, len: usize) -> Self {
        Self {
            len,
            known: 0,
            fresh_at: None,
            hist: vec![0; nodes],
            lin: vec![[0.0; 8]; nodes],
            scale: vec![0.0; nodes],
        }
    }
}

/// Channel outputs as length-1 windows.
#[derive(Clone, Debug, Default)]
pub(crate) struct Leaves {
    lin: Vec<[f64; 8]>,
    scale: Vec<f64>,
}

impl Leaves {
    pub fn load(&mut self, llr: &[f64]) {
        self.lin.clear();
        self.scale.clear();
        for &l in llr {
            let p0 = 1.0 / (1.0 + (-l).exp());
            let p1 = 1.0 / (1.0 + l.exp());
            let top = p0.max(p1);
            let mut w = [0.0; 8];
            w[0] = p0 / top;
            w[1] = p1 / top;
            self.lin.push(w);
            self.scale.push(top.ln());
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct PathState {
    levels: Vec<Rc<Level>>,
    decisions: Vec<u64>,
    phase: usize,
    pub metric: f64,
}

impl PathState {
    pub fn new(n: usize) -> Self {
        let m = n.trailing_zeros() as usize;
        let levels = (0..m).map(|d| Rc::new(Level::new(1 << d, n >> d))).collect();
        Self {
            levels,
            decisions: vec![0; n.div_ceil(64)],
            phase: 0,
            metric: 0.0,
        }
    }

    pub fn decisions(&self) -> &[u64] {
        &self.decisions
    }

    pub fn decision(&self, i: usize) -> bool {
        (self.decisions[i / 64] >> (i % 64)) & 1 == 1
    }

    /// `ln W(u_0^{phase-1}, b)` for `b = 0, 1`.
    pub fn marginals(&mut self, leaves: &Leaves) -> [f64; 2] {
        let (lin, scale) = if self.levels.is_empty() {
            (leaves.lin[0], leaves.scale[0])
        } else {
            self.refresh(0, leaves);
            (self.levels[0].lin[0], self.levels[0].scale[0])
        };
        let mut out = [0.0; 2];
        for (b, o) in out.iter_mut().enumerate() {
            let s: f64 = (0..4).map(|rest| lin[b | (rest << 1)]).sum();
            *o = scale + s.ln();
        }
        out
    }

    fn refresh(&mut self, d: usize, leaves: &Leaves) {
        let level = &self.levels[d];
        if level.fresh_at == Some(level.known) {
            return;
        }
        debug_assert!(level.known < level.len);
        if d + 1 < self.levels.len() {
            self.refresh(d + 1, leaves);
        }
        let (head, tail) = self.levels.split_at_mut(d + 1);
        let (child_lin, child_scale) = match tail.first() {
            Some(c) => (&c.lin, &c.scale),
            None => (&leaves.lin, &leaves.scale),
        };
        let level = Rc::make_mut(&mut head[d]);
        let a = level.known;
        let l = level.len;
        let plans = plans();
        for j in 0..level.hist.len() {
            let fx = &child_lin[2 * j];
            let fz = &child_lin[2 * j + 1];
            let mut out = [0.0f64; 8];
            for t in plans.get(a, l, level.hist[j]) {
                out[t.h as usize] += fx[t.x as usize] * fz[t.z as usize];
            }
            let top = out.iter().fold(0.0f64, |m, &v| m.max(v));
            let base = child_scale[2 * j] + child_scale[2 * j + 1];
            if top > 0.0 {
                for v in out.iter_mut() {
                    *v /= top;
                }
                level.scale[j] = base + top.ln();
            } else {
                level.scale[j] = f64::NEG_INFINITY;
            }
            level.lin[j] = out;
        }
        level.fresh_at = Some(a);
    }

    /// Fixes `u_phase = bit` and propagates the newly determined inputs down the tree.
    pub fn push(&mut self, bit: bool, metric: f64, scratch: &mut Vec<u8>) {
        let p = self.phase;
        if bit {
            self.decisions[p / 64] |= 1 << (p % 64);
        }
        self.phase += 1;
        self.metric = metric;
        scratch.clear();
        scratch.push(bit as u8);
        let mut next = Vec::new();
        for d in 0..self.levels.len() {
            let level = Rc::make_mut(&mut self.levels[d]);
            let p = level.known;
            let l = level.len;
            let emits = (p % 2 == 0 && p >= 2) || p + 1 == l;
            next.clear();
            for (j, &v) in scratch.iter().enumerate() {
                let h = level.hist[j];
                if emits {
                    let (prev1, prev2) = (h & 1, (h >> 1) & 1);
                    if p + 1 == l && p % 2 == 1 {
                        next.push(prev1 ^ v);
                        next.push(v);
                    } else {
                        let z = prev1 ^ v;
                        next.push(prev2 ^ z);
                        next.push(z);
                    }
                }
                level.hist[j] = ((h << 1) | v) & 3;
            }
            level.known += 1;
            debug_assert!(level.known <= l);
            if !emits {
                break;
            }
            std::mem::swap(scratch, &mut next);
        }
    }
}
