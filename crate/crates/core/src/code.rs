//! Code description: length, frozen set and dynamic freezing constraints.
//!
//! Text format (ASCII, line oriented):
//!
//! ```text
//! CVPS <n> <k>
//! SEED <u64>
//! <i>                    static frozen symbol u_i = 0
//! <i> : <j1> <j2> ...    dynamic frozen symbol u_i = u_j1 + u_j2 + ...
//! ```
//!
//! followed by exactly `n - k` frozen lines in ascending `i`, participants
//! ascending, every participant an information index smaller than `i`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::gf2::BitVector;
use crate::transform::{check_power_of_two, encode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    seed: u64,
    /// `frozen[i]` is `Some(participants)` for frozen `i`; an empty list is static.
    frozen: Vec<Option<Vec<usize>>>,
}

impl CodeSpec {
    pub fn new(n: usize, seed: u64, frozen: BTreeMap<usize, Vec<usize>>) -> Result<Self> {
        check_power_of_two(n)?;
        let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
        for (&i, list) in &frozen {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            table[i] = Some(list.clone());
        }
        for (i, entry) in table.iter().enumerate() {
            if let Some(list) = entry {
                check_constraint(i, list, &table)?;
            }
        }
        let k = n - frozen.len();
        Ok(Self { n, k, seed, frozen: table })
    }

    /// A code with all frozen symbols static.
    pub fn from_info_set(n: usize, info: &[usize]) -> Result<Self> {
        check_power_of_two(n)?;
        let mut is_info = vec![false; n];
        for &i in info {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            is_info[i] = true;
        }
        let frozen = (0..n).filter(|&i| !is_info[i]).map(|i| (i, Vec::new())).collect();
        Self::new(n, 0, frozen)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i].is_some()
    }

    /// Participants of the constraint on frozen index `i`, or `None` for information symbols.
    pub fn constraint(&self, i: usize) -> Option<&[usize]> {
        self.frozen[i].as_deref()
    }

    pub fn info_set(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.is_frozen(i)).collect()
    }

    pub fn frozen_set(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_frozen(i)).collect()
    }

    pub fn static_set(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.frozen[i].as_ref().is_some_and(|l| l.is_empty()))
            .collect()
    }

    pub fn dynamic_set(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.frozen[i].as_ref().is_some_and(|l| !l.is_empty()))
            .collect()
    }

    /// Places the information bits and evaluates the frozen symbols.
    pub fn expand(&self, info: &BitVector) -> Result<BitVector> {
        if info.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                actual: info.len(),
            });
        }
        let mut u = BitVector::zeros(self.n);
        let mut next = 0;
        for i in 0..self.n {
            let bit = match &self.frozen[i] {
                None => {
                    next += 1;
                    info.get(next - 1)
                }
                Some(list) => list.iter().fold(false, |acc, &j| acc ^ u.get(j)),
            };
            u.set(i, bit);
        }
        Ok(u)
    }

    /// Information bits of an input vector `u`.
    pub fn info_bits(&self, u: &BitVector) -> BitVector {
        BitVector::from_bools(self.info_set().into_iter().map(|i| u.get(i)))
    }

    /// Whether `u` satisfies every freezing constraint.
    pub fn satisfies(&self, u: &BitVector) -> bool {
        (0..self.n).all(|i| match &self.frozen[i] {
            None => true,
            Some(list) => list.iter().fold(false, |acc, &j| acc ^ u.get(j)) == u.get(i),
        })
    }

    pub fn encode(&self, info: &BitVector) -> Result<BitVector> {
        encode(&self.expand(info)?)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("CVPS {} {}\nSEED {}\n", self.n, self.k, self.seed);
        for (i, entry) in self.frozen.iter().enumerate() {
            match entry {
                None => {}
                Some(list) if list.is_empty() => writeln!(out, "{i}").expect("string write"),
                Some(list) => {
                    let parts: Vec<String> = list.iter().map(|j| j.to_string()).collect();
                    writeln!(out, "{i} : {}", parts.join(" ")).expect("string write");
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

        let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        if tok.len() != 3 || tok[0] != "CVPS" {
            return Err(perr(ln, format!("expected 'CVPS <n> <k>', got '{header}'")));
        }
        let n: usize = tok[1].parse().map_err(|_| perr(ln, format!("bad length '{}'", tok[1])))?;
        let k: usize = tok[2].parse().map_err(|_| perr(ln, format!("bad dimension '{}'", tok[2])))?;
        if n == 0 || !n.is_power_of_two() {
            return Err(perr(ln, format!("length {n} is not a power of two")));
        }
        if k > n {
            return Err(perr(ln, format!("dimension {k} exceeds length {n}")));
        }

        let (ln, seed_line) = lines.next().ok_or_else(|| perr(2, "missing SEED line".into()))?;
        let tok: Vec<&str> = seed_line.split_whitespace().collect();
        if tok.len() != 2 || tok[0] != "SEED" {
            return Err(perr(ln, format!("expected 'SEED <u64>', got '{seed_line}'")));
        }
        let seed: u64 = tok[1].parse().map_err(|_| perr(ln, format!("bad seed '{}'", tok[1])))?;

        let mut entries: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (ln, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (head, tail) = match line.split_once(':') {
                Some((h, t)) => (h.trim(), Some(t.trim())),
                None => (line, None),
            };
            let i: usize = head.parse().map_err(|_| perr(ln, format!("bad frozen index '{head}'")))?;
            if i >= n {
                return Err(perr(ln, format!("frozen index {i} outside [0, {n})")));
            }
            if let Some(&(_, prev, _)) = entries.last() {
                if i <= prev {
                    return Err(perr(ln, format!("frozen indices must ascend ({i} after {prev})")));
                }
            }
            let mut list = Vec::new();
            if let Some(tail) = tail {
                for t in tail.split_whitespace() {
                    let j: usize = t.parse().map_err(|_| perr(ln, format!("bad participant '{t}'")))?;
                    list.push(j);
                }
                if list.is_empty() {
                    return Err(perr(ln, "dynamic constraint without participants".into()));
                }
            }
            entries.push((ln, i, list));
        }
        if entries.len() != n - k {
            return Err(perr(
                entries.last().map_or(2, |e| e.0),
                format!("expected {} frozen lines, found {}", n - k, entries.len()),
            ));
        }
        let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
        for (_, i, list) in &entries {
            table[*i] = Some(list.clone());
        }
        for (ln, i, list) in &entries {
            check_constraint(*i, list, &table).map_err(|e| perr(*ln, e.to_string()))?;
        }
        Ok(Self { n, k, seed, frozen: table })
    }
}

fn check_constraint(i: usize, list: &[usize], table: &[Option<Vec<usize>>]) -> Result<()> {
    for (pos, &j) in list.iter().enumerate() {
        if j >= i {
            return Err(invalid(format!("participant {j} of frozen index {i} is not smaller than {i}")));
        }
        if table[j].is_some() {
            return Err(invalid(format!("participant {j} of frozen index {i} is frozen")));
        }
        if pos > 0 && list[pos - 1] >= j {
            return Err(invalid(format!("participants of frozen index {i} must ascend")));
        }
    }
    Ok(())
}
