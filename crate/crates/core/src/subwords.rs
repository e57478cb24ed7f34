//! Exact counting of freely reduced words with forbidden subwords.
//!
//! [`AvoidanceAutomaton`] is an Aho–Corasick automaton over the `2r` symbols,
//! restricted so that no transition cancels the previous letter and no
//! transition completes a pattern. Counting paths of length `L` from the start
//! state counts reduced words of length `L` that avoid every pattern.
//!
//! For `F_2` the Whitehead graph of a prefix depends only on which of the six
//! vertex pairs have been covered, so a 4 x 4 x 2^6 state dynamic program
//! counts words whose graph (without external edge) is incomplete.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::stats::{linear_fit, ln_biguint, LinearFit};
use crate::words::{inverse_symbol, sample_word};
use crate::{Error, Result, SamplingModel, Seed, Word};

/// Default number of trailing steps used by [`decay_rate`].
pub const DEFAULT_DECAY_WINDOW: usize = 10;

const ROOT: usize = 0;

#[derive(Clone, Debug)]
pub struct AvoidanceAutomaton {
    rank: u32,
    patterns: Vec<Word>,
    /// `transitions[s]` lists the successor state of `s` for every admissible letter.
    transitions: Vec<Vec<usize>>,
}

impl AvoidanceAutomaton {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn patterns(&self) -> &[Word] {
        &self.patterns
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Occupancy vector after `steps` letters, starting from the start state.
    fn step(&self, occupancy: &[BigUint]) -> Vec<BigUint> {
        let mut next = vec![BigUint::zero(); occupancy.len()];
        for (s, count) in occupancy.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &t in &self.transitions[s] {
                next[t] += count;
            }
        }
        next
    }

    /// Avoiding-word counts for every length `0..=max_len`.
    pub fn counts(&self, max_len: usize) -> Vec<BigUint> {
        let mut occ = vec![BigUint::zero(); self.state_count()];
        occ[0] = BigUint::one();
        let mut out = Vec::with_capacity(max_len + 1);
        out.push(BigUint::one());
        for _ in 0..max_len {
            occ = self.step(&occ);
            out.push(occ.iter().sum());
        }
        out
    }
}

/// Build the automaton. State 0 is the start state, states `1..=2r` are "no
/// partial match, last letter s", the rest are trie nodes that are proper
/// pattern prefixes (their last letter is implicit).
pub fn build_avoidance_automaton(rank: u32, forbidden: &[Word]) -> Result<AvoidanceAutomaton> {
    if rank == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    for p in forbidden {
        if p.is_empty() {
            return Err(Error::invalid("forbidden patterns must be nonempty"));
        }
        if !p.is_reduced() {
            return Err(Error::invalid(format!(
                "forbidden pattern {p} is not reduced"
            )));
        }
        if p.rank() != rank {
            return Err(Error::invalid(format!(
                "pattern {p} has rank {} not {rank}",
                p.rank()
            )));
        }
    }
    let sigma = 2 * rank as usize;

    // trie
    let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; sigma]];
    let mut terminal = vec![false];
    let mut last_symbol = vec![usize::MAX];
    for p in forbidden {
        let mut node = ROOT;
        for l in p.letters() {
            let s = l.symbol(rank);
            node = match goto[node][s] {
                Some(n) => n,
                None => {
                    goto.push(vec![None; sigma]);
                    terminal.push(false);
                    last_symbol.push(s);
                    let n = goto.len() - 1;
                    goto[node][s] = Some(n);
                    n
                }
            };
        }
        terminal[node] = true;
    }

    // failure links and full transition function
    let nodes = goto.len();
    let mut delta = vec![vec![ROOT; sigma]; nodes];
    let mut fail = vec![ROOT; nodes];
    let mut queue = VecDeque::new();
    for s in 0..sigma {
        if let Some(n) = goto[ROOT][s] {
            delta[ROOT][s] = n;
            queue.push_back(n);
        }
    }
    while let Some(u) = queue.pop_front() {
        terminal[u] = terminal[u] || terminal[fail[u]];
        for s in 0..sigma {
            match goto[u][s] {
                Some(v) => {
                    fail[v] = delta[fail[u]][s];
                    delta[u][s] = v;
                    queue.push_back(v);
                }
                None => delta[u][s] = delta[fail[u]][s],
            }
        }
    }

    // counting states
    let mut node_state = vec![usize::MAX; nodes];
    let mut next_id = 1 + sigma;
    for n in 1..nodes {
        if !terminal[n] {
            node_state[n] = next_id;
            next_id += 1;
        }
    }
    let state_of = |node: usize, sym: usize| -> Option<usize> {
        if terminal[node] {
            None
        } else if node == ROOT {
            Some(1 + sym)
        } else {
            Some(node_state[node])
        }
    };
    let mut transitions = vec![Vec::new(); next_id];
    let mut add_from = |state: usize, node: usize, last: Option<usize>| {
        for (s, &target) in delta[node].iter().enumerate().take(sigma) {
            if last.is_some_and(|l| s == inverse_symbol(l, rank)) {
                continue;
            }
            if let Some(t) = state_of(target, s) {
                transitions[state].push(t);
            }
        }
    };
    add_from(0, ROOT, None);
    for sym in 0..sigma {
        add_from(1 + sym, ROOT, Some(sym));
    }
    for n in 1..nodes {
        if !terminal[n] {
            add_from(node_state[n], n, Some(last_symbol[n]));
        }
    }

    Ok(AvoidanceAutomaton {
        rank,
        patterns: forbidden.to_vec(),
        transitions,
    })
}

pub fn count_avoiding(automaton: &AvoidanceAutomaton, len: usize) -> BigUint {
    automaton.counts(len).pop().unwrap_or_else(BigUint::one)
}

/// Vertex pair index for the six unordered pairs of the four `F_2` letters.
fn pair_index(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!("loops do not occur in reduced words"),
    }
}

const FULL: usize = 0b11_1111;

/// Dynamic program over (first letter, last letter, covered pairs) for
/// reduced words of `F_2`.
#[derive(Clone, Debug)]
pub struct EdgeCoverageCounter {
    // index: (first * 4 + last) * 64 + mask
    counts: Vec<BigUint>,
    len: usize,
}

impl EdgeCoverageCounter {
    pub fn new() -> EdgeCoverageCounter {
        let mut counts = vec![BigUint::zero(); 16 * 64];
        for s in 0..4 {
            counts[(s * 4 + s) * 64] = BigUint::one();
        }
        EdgeCoverageCounter { counts, len: 1 }
    }

    /// Number of letters the current counts refer to.
    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn advance(&mut self) {
        let mut next = vec![BigUint::zero(); self.counts.len()];
        for first in 0..4 {
            for last in 0..4 {
                for mask in 0..64 {
                    let c = &self.counts[(first * 4 + last) * 64 + mask];
                    if c.is_zero() {
                        continue;
                    }
                    for s in 0..4 {
                        if s == inverse_symbol(last, 2) {
                            continue;
                        }
                        let m = mask | 1 << pair_index(last, inverse_symbol(s, 2));
                        next[(first * 4 + s) * 64 + m] += c;
                    }
                }
            }
        }
        self.counts = next;
        self.len += 1;
    }

    fn sum(&self, cyclic: bool, incomplete_only: bool) -> BigUint {
        let mut total = BigUint::zero();
        for first in 0..4 {
            for last in 0..4 {
                if cyclic && self.len > 1 && first == inverse_symbol(last, 2) {
                    continue;
                }
                for mask in 0..64 {
                    if incomplete_only && mask == FULL {
                        continue;
                    }
                    total += &self.counts[(first * 4 + last) * 64 + mask];
                }
            }
        }
        total
    }

    /// Reduced words of the current length with an incomplete graph.
    pub fn incomplete(&self) -> BigUint {
        self.sum(false, true)
    }

    /// Cyclically reduced words of the current length with an incomplete graph
    /// (the external edge is not included).
    pub fn incomplete_cyclic(&self) -> BigUint {
        self.sum(true, true)
    }

    pub fn total(&self) -> BigUint {
        self.sum(false, false)
    }

    pub fn total_cyclic(&self) -> BigUint {
        self.sum(true, false)
    }
}

impl Default for EdgeCoverageCounter {
    fn default() -> Self {
        Self::new()
    }
}

fn incomplete_series(rank: u32, max_len: usize, cyclic: bool) -> Result<Vec<BigUint>> {
    if rank != 2 {
        return Err(Error::invalid(
            "exact incomplete-graph counting is implemented for rank 2 only; \
             use estimate_incomplete_fraction for higher ranks",
        ));
    }
    let mut out = vec![BigUint::one()];
    if max_len == 0 {
        return Ok(out);
    }
    let mut counter = EdgeCoverageCounter::new();
    loop {
        out.push(if cyclic {
            counter.incomplete_cyclic()
        } else {
            counter.incomplete()
        });
        if counter.word_len() == max_len {
            break;
        }
        counter.advance();
    }
    Ok(out)
}

/// Reduced words of `F_2` of each length `0..=max_len` whose Whitehead graph
/// without external edge is incomplete.
pub fn incomplete_graph_series(rank: u32, max_len: usize) -> Result<Vec<BigUint>> {
    incomplete_series(rank, max_len, false)
}

/// As [`incomplete_graph_series`], restricted to cyclically reduced words.
pub fn incomplete_graph_series_cyclic(rank: u32, max_len: usize) -> Result<Vec<BigUint>> {
    incomplete_series(rank, max_len, true)
}

pub fn count_incomplete_graph(rank: u32, len: usize) -> Result<BigUint> {
    Ok(incomplete_graph_series(rank, len)?
        .pop()
        .expect("series is nonempty"))
}

/// Monte Carlo estimate of the fraction of words (under `model`) whose
/// external-edge-free Whitehead graph is incomplete; returns the fraction and
/// its standard error. Works for any rank.
pub fn estimate_incomplete_fraction(
    rank: u32,
    len: usize,
    model: SamplingModel,
    trials: u64,
    seed: Seed,
) -> (f64, f64) {
    use rayon::prelude::*;
    let v = 2 * rank as usize;
    let full = v * (v - 1) / 2;
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed.stream(i);
            let w = sample_word(rank, len, model, &mut rng);
            let mut covered = vec![false; v * v];
            let mut n = 0;
            for p in w.letters().windows(2) {
                let (a, b) = (p[0].symbol(rank), p[1].inverse().symbol(rank));
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                if lo != hi && !covered[lo * v + hi] {
                    covered[lo * v + hi] = true;
                    n += 1;
                }
            }
            u64::from(n < full)
        })
        .sum();
    let f = hits as f64 / trials as f64;
    (f, (f * (1.0 - f) / trials as f64).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayEstimate {
    /// Geometric mean of the per-step ratio change over the window.
    pub s: f64,
    /// Exact `ratio(L) / ratio(L-1)` at the last index.
    #[serde(skip)]
    pub last_step: Option<BigRational>,
    pub window: usize,
    /// Index of the first and last ratio used.
    pub from: usize,
    pub to: usize,
}

/// Decay base of `ratio(L) = counts[L] / base_counts[L]`, estimated as
/// `(ratio(last) / ratio(last - window))^(1/window)`. The window is clamped to
/// the available length.
pub fn decay_rate(
    counts: &[BigUint],
    base_counts: &[BigUint],
    window: usize,
) -> Result<DecayEstimate> {
    if counts.len() != base_counts.len() {
        return Err(Error::invalid("count sequences must have equal length"));
    }
    if counts.len() < 3 {
        return Err(Error::invalid(
            "decay estimation needs at least three points",
        ));
    }
    if base_counts.iter().any(|b| b.is_zero()) {
        return Err(Error::invalid("zero denominator in decay estimation"));
    }
    if counts.iter().any(|c| c.is_zero()) {
        return Err(Error::invalid("decay estimation needs positive counts"));
    }
    let to = counts.len() - 1;
    let window = window.clamp(1, to);
    let from = to - window;
    let ln_ratio = |i: usize| ln_biguint(&counts[i]) - ln_biguint(&base_counts[i]);
    let s = ((ln_ratio(to) - ln_ratio(from)) / window as f64).exp();
    let ratio = |i: usize| {
        BigRational::new(
            BigInt::from(counts[i].clone()),
            BigInt::from(base_counts[i].clone()),
        )
    };
    Ok(DecayEstimate {
        s,
        last_step: Some(ratio(to) / ratio(to - 1)),
        window,
        from,
        to,
    })
}

/// Least-squares fit of `ln(counts[L] / base_counts[L])` against `L` over the
/// given lengths. The fitted base is `exp(slope)`.
pub fn log_linear_decay(
    counts: &[BigUint],
    base_counts: &[BigUint],
    lengths: impl IntoIterator<Item = usize>,
) -> Result<LinearFit> {
    let mut points = Vec::new();
    for l in lengths {
        let (c, b) = match (counts.get(l), base_counts.get(l)) {
            (Some(c), Some(b)) => (c, b),
            _ => {
                return Err(Error::invalid(format!(
                    "length {l} outside the count sequence"
                )))
            }
        };
        if c.is_zero() || b.is_zero() {
            return Err(Error::invalid("log-linear fit needs positive counts"));
        }
        points.push((l as f64, ln_biguint(c) - ln_biguint(b)));
    }
    linear_fit(&points).ok_or_else(|| Error::invalid("log-linear fit needs two distinct lengths"))
}

/// One row of an exact avoidance table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubwordRow {
    pub len: usize,
    pub count: String,
    pub reduced_total: String,
    pub ratio: f64,
}

/// Per-length exact counts and their ratio to the number of reduced words.
pub fn ratio_table(counts: &[BigUint], base_counts: &[BigUint]) -> Vec<SubwordRow> {
    counts
        .iter()
        .zip(base_counts)
        .enumerate()
        .map(|(len, (c, b))| SubwordRow {
            len,
            count: c.to_string(),
            reduced_total: b.to_string(),
            ratio: if b.is_zero() {
                f64::NAN
            } else {
                BigRational::new(BigInt::from(c.clone()), BigInt::from(b.clone()))
                    .to_f64()
                    .unwrap_or(f64::NAN)
            },
        })
        .collect()
}
