//! Evaluation plans for one node of the decoding tree.
//!
//! A node of length `l` holds, for its current number `a` of known inputs,
//! the joint probability of `(v_a, v_a+1, v_a+2)` (window index `h`, bit `t`
//! for `v_a+t`) together with the known prefix. With `a' = max(0, ceil(a/2) - 1)`
//! known symbols in each child, the node's window is a sum of products of
//! one entry from each child's window. A plan lists those products.
//!
//! The plan depends only on whether `a == 0`, on the parity of `a`, on how
//! close the window is to the end of the node, and on the last two known
//! inputs `v_a-1` (bit 0 of `hist`) and `v_a-2` (bit 1).

use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub h: u8,
    pub x: u8,
    pub z: u8,
}

const REACH: usize = 8;
const CLASSES: usize = 3 * (REACH + 1);

pub(crate) struct Plans {
    table: Vec<[Vec<Term>; 4]>,
}

impl Plans {
    #[inline]
    pub fn get(&self, a: usize, l: usize, hist: u8) -> &[Term] {
        &self.table[class_of(a, l)][hist as usize]
    }
}

#[inline]
fn class_of(a: usize, l: usize) -> usize {
    let kind = if a == 0 { 0 } else { 1 + (a & 1) };
    kind * (REACH + 1) + (l - a).min(REACH)
}

/// Known-prefix count of each child when the parent knows `a` inputs.
#[inline]
pub(crate) fn child_start(a: usize) -> usize {
    if a == 0 {
        0
    } else {
        (a - 1) / 2
    }
}

pub(crate) fn plans() -> &'static Plans {
    static PLANS: OnceLock<Plans> = OnceLock::new();
    PLANS.get_or_init(|| {
        let mut table: Vec<[Vec<Term>; 4]> = (0..CLASSES).map(|_| Default::default()).collect();
        for (kind, a) in [(0usize, 0usize), (1, 2), (2, 3)] {
            for rem in 1..=REACH {
                let l = a + rem;
                if rem < REACH && l % 2 == 1 {
                    continue;
                }
                let c = kind * (REACH + 1) + rem;
                for hist in 0..4u8 {
                    table[c][hist as usize] = build(a, l, hist);
                }
            }
        }
        Plans { table }
    })
}

/// Enumerates every assignment of the window, the free inputs that affect
/// the children's windows, and the free child symbols.
fn build(a: usize, l: usize, hist: u8) -> Vec<Term> {
    let lc = l / 2;
    let ac = child_start(a);
    let e = (a + 2).min(l - 1);
    let mut terms = Vec::new();
    for h in 0..8u8 {
        if (0..3).any(|t| (h >> t) & 1 == 1 && a + t >= l) {
            continue;
        }
        let next_choices: &[u8] = if e % 2 == 1 && e + 1 < l { &[0, 1] } else { &[0] };
        for &next in next_choices {
            let e2 = if e % 2 == 1 { e + 1 } else { e };
            let v = |t: usize| -> u8 {
                if t >= l {
                    0
                } else if t + 1 == a {
                    hist & 1
                } else if t + 2 == a {
                    (hist >> 1) & 1
                } else if t >= a && t < a + 3 {
                    (h >> (t - a)) & 1
                } else if t == e + 1 {
                    next
                } else {
                    unreachable!("input {t} not available for a = {a}, l = {l}")
                }
            };
            let k = e2 / 2;
            let w_choices: &[u8] = if k < lc { &[0, 1] } else { &[0] };
            for &w in w_choices {
                // Per window slot: fixed (x, z) or free.
                let mut slots: Vec<Option<(u8, u8)>> = Vec::new();
                for i in ac..ac + 3 {
                    let s = if i >= lc {
                        Some((0, 0))
                    } else if i < k {
                        let z = v(2 * i + 1) ^ v(2 * i + 2);
                        Some((v(2 * i) ^ z, z))
                    } else if i == k {
                        Some((v(e2) ^ w, w))
                    } else {
                        None
                    };
                    slots.push(s);
                }
                let free: Vec<usize> = (0..3).filter(|&t| slots[t].is_none()).collect();
                for f in 0..(1u32 << (2 * free.len())) {
                    let mut x = 0u8;
                    let mut z = 0u8;
                    let mut fi = 0;
                    for (t, s) in slots.iter().enumerate() {
                        let (xb, zb) = match s {
                            Some(p) => *p,
                            None => {
                                let p = (((f >> (2 * fi)) & 1) as u8, ((f >> (2 * fi + 1)) & 1) as u8);
                                fi += 1;
                                p
                            }
                        };
                        x |= xb << t;
                        z |= zb << t;
                    }
                    terms.push(Term { h, x, z });
                }
            }
        }
    }
    terms
}
