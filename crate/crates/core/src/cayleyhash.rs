//! Cayley hashing of bit strings into `SL2(Z/p)` with generators `A(x)`,
//! `B(y)`, plus girth bounds derived from integer entry growth.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::matgrowth::{
    eval_product, generates_free_semigroup, max_entries_by_length, spectral_growth_base,
    ProductWord, MAX_EXHAUSTIVE_LEN,
};
use crate::{Error, Result};

/// Default cap on the number of words hashed by [`shortest_collision_bfs`]
/// (summed over all levels).
pub const DEFAULT_BFS_BUDGET: u64 = 1 << 23;

/// Word length used when estimating the growth base for the log bound.
const SPECTRAL_SEARCH_LEN: usize = 8;

/// Deterministic primality test, valid on all of `u64`.
pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

fn residue(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

/// 2 x 2 matrix over `Z/p`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2ModP {
    pub entries: [u64; 4],
    pub p: u64,
}

impl Mat2ModP {
    pub fn identity(p: u64) -> Mat2ModP {
        Mat2ModP {
            entries: [1, 0, 0, 1],
            p,
        }
    }

    pub fn gen_a(x: i64, p: u64) -> Mat2ModP {
        Mat2ModP {
            entries: [1, residue(x, p), 0, 1],
            p,
        }
    }

    pub fn gen_b(y: i64, p: u64) -> Mat2ModP {
        Mat2ModP {
            entries: [1, 0, residue(y, p), 1],
            p,
        }
    }

    /// Entrywise reduction of an integer matrix.
    pub fn reduce(m: &crate::matgrowth::Mat2, p: u64) -> Mat2ModP {
        let bp = BigInt::from(p);
        let r = |v: &BigInt| -> u64 {
            let t = ((v % &bp) + &bp) % &bp;
            u64::try_from(t).expect("residue below p")
        };
        Mat2ModP {
            entries: [r(&m.a), r(&m.b), r(&m.c), r(&m.d)],
            p,
        }
    }

    pub fn mul(&self, o: &Mat2ModP) -> Mat2ModP {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as u128;
        let [a, b, c, d] = self.entries.map(u128::from);
        let [e, f, g, h] = o.entries.map(u128::from);
        let dot = |x: u128, y: u128, z: u128, w: u128| (((x * y) % p + (z * w) % p) % p) as u64;
        Mat2ModP {
            entries: [
                dot(a, e, b, g),
                dot(a, f, b, h),
                dot(c, e, d, g),
                dot(c, f, d, h),
            ],
            p: self.p,
        }
    }

    pub fn det(&self) -> u64 {
        let p = self.p as u128;
        let [a, b, c, d] = self.entries.map(u128::from);
        (((a * d) % p + p - (b * c) % p) % p) as u64
    }
}

impl fmt::Display for Mat2ModP {
    /// Four decimal residues, row-major, space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "{a} {b} {c} {d}")
    }
}

fn check_params(p: u64, x: i64, y: i64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::invalid(format!("modulus {p} is not an odd prime")));
    }
    let bp = p as i128;
    if (x as i128) % bp == 0 || (y as i128) % bp == 0 {
        return Err(Error::invalid(format!(
            "p = {p} divides a generator parameter (x = {x}, y = {y})"
        )));
    }
    Ok(())
}

/// Hash of a bit string: the product of `A(x)`, `B(y)` mod `p`.
pub fn hash_bits(bits: &ProductWord, p: u64, x: i64, y: i64) -> Result<Mat2ModP> {
    check_params(p, x, y)?;
    let (ga, gb) = (Mat2ModP::gen_a(x, p), Mat2ModP::gen_b(y, p));
    Ok(bits.bits().iter().fold(Mat2ModP::identity(p), |m, &b| {
        m.mul(if b { &gb } else { &ga })
    }))
}

/// How the certified length in a [`GirthReport`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    /// Every word up to the certified length was evaluated.
    Exhaustive,
    /// Exhaustive up to the search limit, then extended with alternating
    /// words, which are assumed to maximize the entries.
    PatternExtension,
    /// Exhaustive search ran out before the threshold was reached; the length
    /// is a lower bound on what could be certified.
    Truncated,
    /// The pair admits short integer relations, so no certificate is given.
    Refused,
}

impl BoundMethod {
    pub fn label(self) -> &'static str {
        match self {
            BoundMethod::Exhaustive => "exhaustive",
            BoundMethod::PatternExtension => "pattern_extension",
            BoundMethod::Truncated => "truncated",
            BoundMethod::Refused => "refused",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GirthReport {
    pub p: u64,
    pub x: i64,
    pub y: i64,
    /// Growth base `s` used for the logarithmic bound.
    pub base: f64,
    /// Largest `N` such that distinct words of length at most `N` have
    /// distinct hashes; absent when refused.
    pub exact_bound: Option<u64>,
    pub method: BoundMethod,
    /// `log_s p`; absent when `s` is not above 1.
    pub heuristic_bound: Option<f64>,
    /// Largest |entry| over words of length at most `N` (and at `N + 1`, the
    /// first length that breaks the threshold, when known).
    pub max_entry_at_bound: Option<BigInt>,
    pub max_entry_beyond: Option<BigInt>,
}

/// Certified collision-free length for hashing with `A(x)`, `B(y)` mod `p`.
///
/// If all entries of two integer products lie in a window narrower than `p`,
/// congruent products are equal, and for a free semigroup equal products come
/// from equal words. With nonnegative entries (both parameters positive) the
/// window is `[0, p)`; otherwise entries are signed and the threshold is
/// `2 * max |entry| < p`. Pairs that are not known to generate a free
/// semigroup are refused, and only the log bound is reported.
pub fn collision_free_bound(p: u64, x: i64, y: i64) -> Result<GirthReport> {
    check_params(p, x, y)?;
    let base = spectral_growth_base(SPECTRAL_SEARCH_LEN, x, y);
    let heuristic_bound = (base > 1.0 + 1e-12).then(|| (p as f64).ln() / base.ln());
    let mut report = GirthReport {
        p,
        x,
        y,
        base,
        exact_bound: None,
        method: BoundMethod::Refused,
        heuristic_bound,
        max_entry_at_bound: None,
        max_entry_beyond: None,
    };
    if !generates_free_semigroup(x, y) {
        return Ok(report);
    }
    let nonnegative = x > 0 && y > 0;
    let bp = BigInt::from(p);
    let fits = |m: &BigInt| if nonnegative { *m < bp } else { m * 2 < bp };

    // Running maximum over lengths 0..=n. The search depth grows in steps so
    // that small moduli do not pay for the full exhaustive range.
    let mut running = BigInt::from(1);
    let mut searched = 0;
    for depth in [8, 12, 16, 20, MAX_EXHAUSTIVE_LEN] {
        let levels = max_entries_by_length(depth, x, y)?;
        for level in &levels[searched + 1..] {
            let candidate = running.clone().max(level.max_entry.clone());
            if !fits(&candidate) {
                report.exact_bound = Some(level.n as u64 - 1);
                report.method = BoundMethod::Exhaustive;
                report.max_entry_at_bound = Some(running);
                report.max_entry_beyond = Some(candidate);
                return Ok(report);
            }
            running = candidate;
        }
        searched = depth;
    }
    if !nonnegative {
        report.exact_bound = Some(MAX_EXHAUSTIVE_LEN as u64);
        report.method = BoundMethod::Truncated;
        report.max_entry_at_bound = Some(running);
        return Ok(report);
    }
    // Positive entries are nondecreasing in the length, so only the level
    // maximum matters; past the search limit take the alternating words.
    let alternating = [ProductWord::parse("AB")?, ProductWord::parse("BA")?];
    let mut n = MAX_EXHAUSTIVE_LEN + 1;
    loop {
        let level_max = alternating
            .iter()
            .map(|pat| eval_product(&ProductWord::periodic(pat, n), x, y).max_abs_entry())
            .max()
            .expect("two patterns");
        if !fits(&level_max) {
            report.exact_bound = Some(n as u64 - 1);
            report.method = BoundMethod::PatternExtension;
            report.max_entry_at_bound = Some(running);
            report.max_entry_beyond = Some(level_max);
            return Ok(report);
        }
        running = running.max(level_max);
        n += 1;
    }
}

/// Two distinct words of the same length with equal hashes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub length: usize,
    pub u: ProductWord,
    pub v: ProductWord,
    pub digest: Mat2ModP,
}

/// Shortest length at which two distinct words collide, searched level by
/// level in lexicographic order; the witness is the first repeated digest.
/// Every word up to `max_len` is hashed, so `2^(max_len + 1)` must fit in the
/// budget.
pub fn shortest_collision_bfs(
    p: u64,
    x: i64,
    y: i64,
    max_len: usize,
    budget: u64,
) -> Result<Option<Collision>> {
    check_params(p, x, y)?;
    let required = if max_len >= 63 {
        u64::MAX
    } else {
        (2u64 << max_len) - 1
    };
    if required > budget {
        return Err(Error::budget(
            "collision search (words hashed)",
            required,
            budget,
        ));
    }
    let (ga, gb) = (Mat2ModP::gen_a(x, p), Mat2ModP::gen_b(y, p));
    // Level l holds the digests of all length-l words in lexicographic order;
    // word index i at level l has bits = binary expansion of i.
    let mut level = vec![Mat2ModP::identity(p)];
    for len in 1..=max_len {
        let mut next = Vec::with_capacity(level.len() * 2);
        for m in &level {
            next.push(m.mul(&ga));
            next.push(m.mul(&gb));
        }
        let mut seen: HashMap<Mat2ModP, usize> = HashMap::with_capacity(next.len());
        for (i, m) in next.iter().enumerate() {
            if let Some(&j) = seen.get(m) {
                let word =
                    |k: usize| ProductWord((0..len).rev().map(|b| k >> b & 1 == 1).collect());
                return Ok(Some(Collision {
                    length: len,
                    u: word(j),
                    v: word(i),
                    digest: *m,
                }));
            }
            seen.insert(*m, i);
        }
        level = next;
    }
    Ok(None)
}
