//! Words over the free group `F_r`: letters, free and cyclic reduction,
//! counting, uniform sampling and exhaustive enumeration.
//!
//! Text format: generator `i` is the `i`-th lowercase letter and its inverse
//! the uppercase letter (for `r <= 26`). The long form `x3` / `X3` is accepted
//! for any rank. When `r < 24` the letters `x`, `y`, `z` also stand for the
//! first three generators, so Heisenberg words can be written as `xyXY`.
//! Whitespace is ignored; `1` or `ε` alone denotes the empty word.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Seed};

/// A signed generator index: `+i` is `x_i`, `-i` is `x_i^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    pub fn new(value: i32) -> Option<Letter> {
        (value != 0).then_some(Letter(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// 1-based generator index.
    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Position in the ordered alphabet `x_1..x_r, x_1^{-1}..x_r^{-1}`.
    /// This ordering fixes the lexicographic order of enumeration and the
    /// vertex numbering of Whitehead graphs.
    pub fn symbol(self, rank: u32) -> usize {
        if self.0 > 0 {
            (self.0 - 1) as usize
        } else {
            (rank as i32 - self.0 - 1) as usize
        }
    }

    pub fn from_symbol(symbol: usize, rank: u32) -> Letter {
        let r = rank as usize;
        debug_assert!(symbol < 2 * r);
        if symbol < r {
            Letter(symbol as i32 + 1)
        } else {
            Letter(-((symbol - r) as i32 + 1))
        }
    }

    fn fits(self, rank: u32) -> bool {
        self.0 != 0 && self.generator() <= rank
    }
}

/// Inverse of an alphabet symbol under [`Letter::symbol`] numbering.
pub(crate) fn inverse_symbol(symbol: usize, rank: u32) -> usize {
    let r = rank as usize;
    (symbol + r) % (2 * r)
}

/// A word over the alphabet of `F_rank`. Not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(rank: u32, letters: Vec<Letter>) -> Result<Word> {
        check_rank(rank)?;
        if let Some(bad) = letters.iter().find(|l| !l.fits(rank)) {
            return Err(Error::invalid(format!(
                "letter {} out of range for rank {rank}",
                bad.0
            )));
        }
        Ok(Word { rank, letters })
    }

    pub fn from_ints(rank: u32, values: &[i32]) -> Result<Word> {
        let letters = values
            .iter()
            .map(|&v| Letter::new(v).ok_or_else(|| Error::invalid("letter 0 is not a generator")))
            .collect::<Result<Vec<_>>>()?;
        Word::new(rank, letters)
    }

    pub fn empty(rank: u32) -> Word {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Letters already validated against `rank`.
    pub(crate) fn from_trusted(rank: u32, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.iter().all(|l| l.fits(rank)));
        Word { rank, letters }
    }

    pub fn parse(rank: u32, text: &str) -> Result<Word> {
        check_rank(rank)?;
        let trimmed = text.trim();
        if trimmed == "1" || trimmed == "ε" {
            return Ok(Word::empty(rank));
        }
        let chars: Vec<char> = trimmed.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::with_capacity(chars.len());
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let long_form =
                (c == 'x' || c == 'X') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
            let (generator, positive) = if long_form {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let digits: String = chars[start..end].iter().collect();
                let g: u32 = digits
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad generator index {digits:?}")))?;
                i = end;
                (g, c == 'x')
            } else if c.is_ascii_alphabetic() {
                i += 1;
                let lower = c.to_ascii_lowercase();
                let mut g = (lower as u8 - b'a') as u32 + 1;
                if g > rank && rank < 24 && matches!(lower, 'x' | 'y' | 'z') {
                    g = (lower as u8 - b'x') as u32 + 1;
                }
                (g, c.is_ascii_lowercase())
            } else {
                return Err(Error::invalid(format!(
                    "unexpected character {c:?} in word"
                )));
            };
            if generator == 0 || generator > rank {
                return Err(Error::invalid(format!(
                    "generator {generator} out of range for rank {rank}"
                )));
            }
            let v = generator as i32;
            letters.push(Letter(if positive { v } else { -v }));
        }
        Ok(Word { rank, letters })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// No adjacent pair `x x^{-1}`.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Reduced, and the first letter is not the inverse of the last.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.first(), self.last()) {
                (Some(f), Some(l)) if self.len() > 1 => f != l.inverse(),
                _ => true,
            }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            rank: self.rank.max(other.rank),
            letters,
        }
    }

    /// Cyclic shift moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// All `len()` rotations (one, the empty word, for `ε`).
    pub fn cyclic_permutations(&self) -> Vec<Word> {
        (0..self.len().max(1)).map(|k| self.rotate(k)).collect()
    }

    pub fn reduce(&self) -> Word {
        reduce(self)
    }

    pub fn cyclic_reduce(&self) -> Word {
        cyclic_reduce(self)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for l in &self.letters {
            let slot = &mut v[l.generator() as usize - 1];
            *slot += if l.is_positive() { 1 } else { -1 };
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank <= 26 {
            for l in &self.letters {
                let base = if l.is_positive() { b'a' } else { b'A' };
                write!(f, "{}", (base + (l.generator() - 1) as u8) as char)?;
            }
            Ok(())
        } else {
            let mut first = true;
            for l in &self.letters {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                let x = if l.is_positive() { 'x' } else { 'X' };
                write!(f, "{x}{}", l.generator())?;
            }
            Ok(())
        }
    }
}

fn check_rank(rank: u32) -> Result<()> {
    if rank == 0 {
        Err(Error::invalid("rank must be at least 1"))
    } else {
        Ok(())
    }
}

/// Free reduction by a single left-to-right stack pass.
pub fn reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word {
        rank: w.rank,
        letters: out,
    }
}

/// Free reduction followed by stripping mutually inverse end pairs. The
/// result is conjugate to `w`.
pub fn cyclic_reduce(w: &Word) -> Word {
    let r = reduce(w);
    let letters = &r.letters;
    let (mut lo, mut hi) = (0usize, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    Word {
        rank: w.rank,
        letters: letters[lo..hi].to_vec(),
    }
}

/// Number of freely reduced words of length `n` in `F_r`:
/// `2r (2r-1)^(n-1)` for `n >= 1`, and 1 for `n = 0`.
pub fn count_reduced(rank: u32, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let r = BigUint::from(rank);
    let two_r = &r * 2u32;
    let rest: BigUint = Pow::pow(&two_r - 1u32, (n - 1) as u32);
    two_r * rest
}

/// Number of cyclically reduced words of length `n >= 1` in `F_r`:
/// `(2r-1)^n + 1 + (r-1)(1 + (-1)^n)`; 1 for `n = 0`.
pub fn count_cyclically_reduced(rank: u32, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let r = BigUint::from(rank);
    let base: BigUint = Pow::pow(&r * 2u32 - 1u32, n as u32);
    let parity = if n.is_multiple_of(2) { 2u32 } else { 0 };
    base + 1u32 + (r - 1u32) * parity
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SamplingModel {
    /// Each letter independently uniform over the `2r` symbols.
    AllWords,
    /// Uniform over freely reduced words of length `n`.
    Reduced,
    /// Uniform over cyclically reduced words of length `n`.
    CyclicallyReduced,
}

impl SamplingModel {
    pub const ALL: [SamplingModel; 3] = [
        SamplingModel::AllWords,
        SamplingModel::Reduced,
        SamplingModel::CyclicallyReduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SamplingModel::AllWords => "all",
            SamplingModel::Reduced => "reduced",
            SamplingModel::CyclicallyReduced => "cyclic",
        }
    }

    pub fn admits(self, w: &Word) -> bool {
        match self {
            SamplingModel::AllWords => true,
            SamplingModel::Reduced => w.is_reduced(),
            SamplingModel::CyclicallyReduced => w.is_cyclically_reduced(),
        }
    }
}

impl fmt::Display for SamplingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplingModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" | "allwords" | "all_words" => Ok(SamplingModel::AllWords),
            "reduced" => Ok(SamplingModel::Reduced),
            "cyclic" | "cyclicallyreduced" | "cyclically_reduced" => {
                Ok(SamplingModel::CyclicallyReduced)
            }
            other => Err(Error::invalid(format!("unknown sampling model {other:?}"))),
        }
    }
}

/// Draw a uniform word of length `n` under `model`.
///
/// Reduced words are built letter by letter, each new letter uniform over the
/// `2r - 1` symbols other than the inverse of its predecessor. Cyclically
/// reduced words are obtained by rejection from that sampler; the acceptance
/// probability is at least `1 - 1/(2r-1)`.
pub fn sample_word<R: Rng + ?Sized>(
    rank: u32,
    n: usize,
    model: SamplingModel,
    rng: &mut R,
) -> Word {
    assert!(rank >= 1, "rank must be at least 1");
    let alphabet = 2 * rank;
    match model {
        SamplingModel::AllWords => {
            let letters = (0..n)
                .map(|_| Letter::from_symbol(rng.gen_range(0..alphabet) as usize, rank))
                .collect();
            Word::from_trusted(rank, letters)
        }
        SamplingModel::Reduced => sample_reduced(rank, n, rng),
        SamplingModel::CyclicallyReduced => loop {
            let w = sample_reduced(rank, n, rng);
            if w.is_cyclically_reduced() {
                return w;
            }
        },
    }
}

fn sample_reduced<R: Rng + ?Sized>(rank: u32, n: usize, rng: &mut R) -> Word {
    let alphabet = 2 * rank;
    let mut letters = Vec::with_capacity(n);
    let mut prev: Option<usize> = None;
    for _ in 0..n {
        let sym = match prev {
            None => rng.gen_range(0..alphabet) as usize,
            Some(p) => {
                let forbidden = inverse_symbol(p, rank);
                let k = rng.gen_range(0..alphabet - 1) as usize;
                if k >= forbidden {
                    k + 1
                } else {
                    k
                }
            }
        };
        letters.push(Letter::from_symbol(sym, rank));
        prev = Some(sym);
    }
    Word::from_trusted(rank, letters)
}

/// [`sample_word`] driven by substream 0 of `seed`.
pub fn sample_word_seeded(rank: u32, n: usize, model: SamplingModel, seed: Seed) -> Word {
    sample_word(rank, n, model, &mut seed.stream(0))
}

/// Every word of length `n` admitted by `model`, in lexicographic order of the
/// symbol numbering `x_1 < .. < x_r < x_1^{-1} < .. < x_r^{-1}`.
///
/// Refuses when the number of words to visit exceeds `budget`.
pub fn enumerate_words(rank: u32, n: usize, model: SamplingModel, budget: u64) -> Result<WordIter> {
    check_rank(rank)?;
    let size = match model {
        SamplingModel::AllWords => Pow::pow(BigUint::from(2 * rank), n as u32),
        _ => count_reduced(rank, n),
    };
    if size > BigUint::from(budget) {
        return Err(Error::budget("word enumeration", size, budget));
    }
    Ok(WordIter::new(rank, n, model))
}

pub struct WordIter {
    rank: u32,
    model: SamplingModel,
    digits: Option<Vec<usize>>,
}

impl WordIter {
    fn new(rank: u32, n: usize, model: SamplingModel) -> WordIter {
        let mut it = WordIter {
            rank,
            model,
            digits: None,
        };
        let mut digits = vec![0usize; n];
        it.fill_from(&mut digits, 0);
        it.digits = Some(digits);
        it
    }

    fn alphabet(&self) -> usize {
        2 * self.rank as usize
    }

    fn allowed(&self, digits: &[usize], pos: usize, sym: usize) -> bool {
        match self.model {
            SamplingModel::AllWords => true,
            _ => pos == 0 || sym != inverse_symbol(digits[pos - 1], self.rank),
        }
    }

    fn smallest_from(&self, digits: &[usize], pos: usize, start: usize) -> Option<usize> {
        (start..self.alphabet()).find(|&s| self.allowed(digits, pos, s))
    }

    /// Set positions `pos..` to their smallest admissible values.
    fn fill_from(&self, digits: &mut [usize], pos: usize) {
        for i in pos..digits.len() {
            digits[i] = self
                .smallest_from(digits, i, 0)
                .expect("alphabet has at least two symbols");
        }
    }

    fn advance(&self, digits: &mut [usize]) -> bool {
        for i in (0..digits.len()).rev() {
            if let Some(next) = self.smallest_from(digits, i, digits[i] + 1) {
                digits[i] = next;
                self.fill_from(digits, i + 1);
                return true;
            }
        }
        false
    }

    fn word(&self, digits: &[usize]) -> Word {
        Word::from_trusted(
            self.rank,
            digits
                .iter()
                .map(|&d| Letter::from_symbol(d, self.rank))
                .collect(),
        )
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let mut digits = self.digits.take()?;
            let w = self.word(&digits);
            if self.advance(&mut digits) {
                self.digits = Some(digits);
            }
            if self.model != SamplingModel::CyclicallyReduced || w.is_cyclically_reduced() {
                return Some(w);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet};

    fn w(rank: u32, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(&w(2, "a A")).is_empty());
        assert_eq!(reduce(&w(2, "a b B A b")), w(2, "b"));
        assert_eq!(reduce(&w(2, "a b a")), w(2, "aba"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(cyclic_reduce(&w(2, "A b a")), w(2, "b"));
        assert_eq!(cyclic_reduce(&w(2, "a b")), w(2, "ab"));
        assert_eq!(cyclic_reduce(&w(2, "a")), w(2, "a"));
        assert!(cyclic_reduce(&w(2, "")).is_empty());
    }

    /// Conjugacy oracle: two cyclically reduced words are conjugate iff one is
    /// a rotation of the other.
    #[test]
    fn cyclic_reduce_of_longer_word_is_a_conjugate() {
        let input = w(2, "B a b a A b");
        let out = cyclic_reduce(&input);
        assert_eq!(out.len(), 2);
        assert!(out.is_cyclically_reduced());
        // brute force: some conjugate g^-1 input g, with g ranging over all
        // reduced words of length <= 3, reduces to a rotation of out
        let rotations: HashSet<Word> = out.cyclic_permutations().into_iter().collect();
        let mut found = false;
        for len in 0..=3 {
            for g in enumerate_words(2, len, SamplingModel::Reduced, 1000).unwrap() {
                let conj = reduce(&g.inverse().concat(&input).concat(&g));
                if rotations.contains(&conj) {
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn count_reduced_examples() {
        assert_eq!(count_reduced(2, 1), BigUint::from(4u32));
        assert_eq!(count_reduced(2, 3), BigUint::from(36u32));
        assert_eq!(count_reduced(3, 5), BigUint::from(3750u32));
        assert_eq!(count_reduced(2, 0), BigUint::from(1u32));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w(2, "aB").letters(), &[Letter(1), Letter(-2)]);
        assert_eq!(w(2, "xyXY"), w(2, "abAB"));
        assert_eq!(w(30, "x27 X3").letters(), &[Letter(27), Letter(-3)]);
        assert_eq!(w(30, "x27 X3").to_string(), "x27 X3");
        assert_eq!(w(3, "abC").to_string(), "abC");
        assert!(Word::parse(2, "c").is_err());
        assert!(Word::parse(2, "a?").is_err());
        assert!(Word::parse(0, "").is_err());
        assert!(w(2, "1").is_empty());
        assert!(w(2, "   ").is_empty());
    }

    #[test]
    fn sample_degenerate_and_long() {
        for model in SamplingModel::ALL {
            assert!(sample_word_seeded(2, 0, model, Seed(5)).is_empty());
        }
        let big = sample_word_seeded(2, 1_000_000, SamplingModel::Reduced, Seed(1));
        assert_eq!(big.len(), 1_000_000);
        assert!(big.is_reduced());
    }

    #[test]
    fn single_letter_frequencies_are_uniform() {
        let mut rng = Seed(11).stream(0);
        let mut counts = [0u32; 4];
        let trials = 100_000;
        for _ in 0..trials {
            let l = sample_word(2, 1, SamplingModel::AllWords, &mut rng).letters()[0];
            counts[l.symbol(2)] += 1;
        }
        let expected = trials as f64 / 4.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square, 3 dof, 0.999 quantile
        assert!(chi2 < 16.27, "chi2 = {chi2}");
        for c in counts {
            assert!((c as f64 / trials as f64 - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn reduced_histogram_is_uniform() {
        let mut rng = Seed(3).stream(0);
        let mut hist: HashMap<Word, u32> = HashMap::new();
        let trials = 36_000;
        for _ in 0..trials {
            *hist
                .entry(sample_word(2, 3, SamplingModel::Reduced, &mut rng))
                .or_default() += 1;
        }
        assert_eq!(hist.len(), 36);
        let expected = trials as f64 / 36.0;
        let chi2: f64 = hist
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square, 35 dof, 0.999 quantile
        assert!(chi2 < 66.62, "chi2 = {chi2}");
        for &c in hist.values() {
            assert!((c as f64 - expected).abs() / expected < 0.05 * 3.0);
        }
    }

    #[test]
    fn cyclic_sampler_is_uniform_over_cyclic_words() {
        let support: Vec<Word> = enumerate_words(2, 4, SamplingModel::CyclicallyReduced, 1000)
            .unwrap()
            .collect();
        let mut rng = Seed(9).stream(0);
        let mut hist: HashMap<Word, u32> = HashMap::new();
        let trials = 84 * 500;
        for _ in 0..trials {
            *hist
                .entry(sample_word(
                    2,
                    4,
                    SamplingModel::CyclicallyReduced,
                    &mut rng,
                ))
                .or_default() += 1;
        }
        assert_eq!(hist.len(), support.len());
        let expected = trials as f64 / support.len() as f64;
        let chi2: f64 = hist
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let dof = support.len() as f64 - 1.0;
        // generous: mean + 5 sd of chi-square
        assert!(chi2 < dof + 5.0 * (2.0 * dof).sqrt(), "chi2 = {chi2}");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_words(2, 1, SamplingModel::AllWords, 100)
                .unwrap()
                .count(),
            4
        );
        assert_eq!(
            enumerate_words(2, 2, SamplingModel::Reduced, 100)
                .unwrap()
                .count(),
            12
        );
        assert_eq!(
            enumerate_words(2, 0, SamplingModel::Reduced, 100)
                .unwrap()
                .count(),
            1
        );
        let filtered = enumerate_words(2, 4, SamplingModel::Reduced, 1000)
            .unwrap()
            .filter(|w| w.first().unwrap() != w.last().unwrap().inverse())
            .count();
        let cyclic = enumerate_words(2, 4, SamplingModel::CyclicallyReduced, 1000)
            .unwrap()
            .count();
        assert_eq!(cyclic, filtered);
        for n in 1..=7 {
            for r in 1..=3 {
                let c = enumerate_words(r, n, SamplingModel::Reduced, 1 << 20)
                    .unwrap()
                    .count();
                assert_eq!(BigUint::from(c), count_reduced(r, n));
                let c = enumerate_words(r, n, SamplingModel::CyclicallyReduced, 1 << 20)
                    .unwrap()
                    .count();
                assert_eq!(BigUint::from(c), count_cyclically_reduced(r, n));
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_exhaustive() {
        let all: Vec<Word> = enumerate_words(2, 3, SamplingModel::AllWords, 100)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 64);
        let keys: Vec<Vec<usize>> = all
            .iter()
            .map(|w| w.letters().iter().map(|l| l.symbol(2)).collect())
            .collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
        let reduced: Vec<Word> = all.iter().filter(|w| w.is_reduced()).cloned().collect();
        let enumerated: Vec<Word> = enumerate_words(2, 3, SamplingModel::Reduced, 100)
            .unwrap()
            .collect();
        assert_eq!(reduced, enumerated);
    }

    #[test]
    fn enumeration_budget_refusal() {
        assert!(matches!(
            enumerate_words(2, 20, SamplingModel::AllWords, 1000),
            Err(Error::Budget { .. })
        ));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        (1u32..4).prop_flat_map(|r| {
            let r_i = r as i32;
            prop::collection::vec((1..=r_i, any::<bool>()), 0..40).prop_map(move |v| {
                let letters = v
                    .into_iter()
                    .map(|(g, s)| if s { g } else { -g })
                    .collect::<Vec<_>>();
                Word::from_ints(r, &letters).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in arb_word()) {
            let once = reduce(&w);
            prop_assert!(once.is_reduced());
            prop_assert_eq!(reduce(&once), once.clone());
            prop_assert!(once.len() <= w.len());
            prop_assert_eq!((w.len() - once.len()) % 2, 0);
        }

        #[test]
        fn word_times_inverse_is_trivial(w in arb_word()) {
            prop_assert!(reduce(&w.concat(&w.inverse())).is_empty());
        }

        #[test]
        fn cyclic_reduce_output_is_cyclically_reduced(w in arb_word()) {
            prop_assert!(cyclic_reduce(&w).is_cyclically_reduced());
        }

        #[test]
        fn text_roundtrip(w in arb_word()) {
            prop_assert_eq!(Word::parse(w.rank(), &w.to_string()).unwrap(), w);
        }

        #[test]
        fn reduced_sampler_output_is_reduced(n in 0usize..1000, seed in any::<u64>()) {
            prop_assert!(sample_word_seeded(2, n, SamplingModel::Reduced, Seed(seed)).is_reduced());
            let c = sample_word_seeded(3, n, SamplingModel::CyclicallyReduced, Seed(seed));
            prop_assert!(c.is_cyclically_reduced());
            prop_assert_eq!(c.len(), n);
        }
    }
}
