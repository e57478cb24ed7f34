//! Entry growth of products of `A(x) = [[1, x], [0, 1]]` and
//! `B(y) = [[1, 0], [y, 1]]`.
//!
//! A product word is a bit string, `0 ↦ A` and `1 ↦ B`, evaluated left to
//! right. Everything here is exact big-integer arithmetic; floating point only
//! appears in logarithms and fitted bases.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::stats::{ln_abs, ln_biguint, nearest_rank};
use crate::{Error, Result, Seed};

/// Largest length searched exhaustively by [`max_entry_exhaustive`].
pub const MAX_EXHAUSTIVE_LEN: usize = 24;

/// Largest length enumerated by [`exact_average_entries`].
pub const MAX_AVERAGE_LEN: usize = 20;

/// 2 x 2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Mat2 {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn gen_a(x: i64) -> Mat2 {
        Mat2::new(1, x, 0, 1)
    }

    pub fn gen_b(y: i64) -> Mat2 {
        Mat2::new(1, 0, y, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries()
            .into_iter()
            .map(|e| e.abs())
            .max()
            .expect("four entries")
    }

    /// `self ← self · A(x)`: the second column gains `x` times the first.
    pub fn mul_gen_a_assign(&mut self, x: &BigInt) {
        self.b += &self.a * x;
        self.d += &self.c * x;
    }

    /// `self ← self · B(y)`: the first column gains `y` times the second.
    pub fn mul_gen_b_assign(&mut self, y: &BigInt) {
        self.a += &self.b * y;
        self.c += &self.d * y;
    }

    /// Exponentiation by squaring.
    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut result = Mat2::identity();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// A word in `A` (false) and `B` (true).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductWord(pub Vec<bool>);

impl ProductWord {
    /// Accepts `0`/`1` or `A`/`B` (either case); whitespace is ignored.
    pub fn parse(text: &str) -> Result<ProductWord> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' | 'A' | 'a' => Ok(false),
                '1' | 'B' | 'b' => Ok(true),
                other => Err(Error::invalid(format!(
                    "unexpected symbol {other:?} in product word"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProductWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// `pattern` repeated until length `n` (truncating the last copy).
    pub fn periodic(pattern: &ProductWord, n: usize) -> ProductWord {
        ProductWord((0..n).map(|i| pattern.0[i % pattern.len()]).collect())
    }

    pub fn rotate(&self, k: usize) -> ProductWord {
        let mut bits = self.0.clone();
        if !bits.is_empty() {
            let k = k % bits.len();
            bits.rotate_left(k);
        }
        ProductWord(bits)
    }

    /// `A ↔ B`.
    pub fn swapped(&self) -> ProductWord {
        ProductWord(self.0.iter().map(|b| !b).collect())
    }

    pub fn concat(&self, other: &ProductWord) -> ProductWord {
        ProductWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn to_bitstring(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for ProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "B" } else { "A" })?;
        }
        Ok(())
    }
}

pub fn eval_product(word: &ProductWord, x: i64, y: i64) -> Mat2 {
    let (bx, by) = (BigInt::from(x), BigInt::from(y));
    let mut m = Mat2::identity();
    for &bit in word.bits() {
        if bit {
            m.mul_gen_b_assign(&by);
        } else {
            m.mul_gen_a_assign(&bx);
        }
    }
    m
}

/// Maximum |entry| over all words of one length, with the lexicographically
/// least word attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMax {
    pub n: usize,
    pub max_entry: BigInt,
    pub argmax: ProductWord,
}

/// Per-length maxima for lengths `0..=max_len`, from a single depth-first
/// traversal that extends the prefix product by one generator per level.
/// Leaves are visited in lexicographic order and only strict improvements are
/// recorded, so ties resolve to the least word.
pub fn max_entries_by_length(max_len: usize, x: i64, y: i64) -> Result<Vec<LevelMax>> {
    if max_len > MAX_EXHAUSTIVE_LEN {
        return Err(Error::budget(
            "exhaustive product search (length)",
            max_len,
            MAX_EXHAUSTIVE_LEN,
        ));
    }
    // i128 is exact as long as no entry overflows; otherwise redo in BigInt.
    if let Some(levels) = dfs_i128(max_len, x, y) {
        return Ok(levels);
    }
    Ok(dfs_big(max_len, x, y))
}

fn dfs_i128(max_len: usize, x: i64, y: i64) -> Option<Vec<LevelMax>> {
    struct Ctx {
        x: i128,
        y: i128,
        max_len: usize,
        best: Vec<(i128, u64)>,
        overflow: bool,
    }
    fn visit(ctx: &mut Ctx, m: [i128; 4], depth: usize, bits: u64) {
        if ctx.overflow {
            return;
        }
        let top = m.iter().map(|v| v.abs()).max().unwrap_or(0);
        if top > ctx.best[depth].0 {
            ctx.best[depth] = (top, bits);
        }
        if depth == ctx.max_len {
            return;
        }
        let [a, b, c, d] = m;
        // A(x)
        match (
            a.checked_mul(ctx.x).and_then(|t| t.checked_add(b)),
            c.checked_mul(ctx.x).and_then(|t| t.checked_add(d)),
        ) {
            (Some(nb), Some(nd)) => visit(ctx, [a, nb, c, nd], depth + 1, bits << 1),
            _ => {
                ctx.overflow = true;
                return;
            }
        }
        // B(y)
        match (
            b.checked_mul(ctx.y).and_then(|t| t.checked_add(a)),
            d.checked_mul(ctx.y).and_then(|t| t.checked_add(c)),
        ) {
            (Some(na), Some(nc)) => visit(ctx, [na, b, nc, d], depth + 1, (bits << 1) | 1),
            _ => ctx.overflow = true,
        }
    }
    let mut ctx = Ctx {
        x: x as i128,
        y: y as i128,
        max_len,
        best: vec![(-1, 0); max_len + 1],
        overflow: false,
    };
    visit(&mut ctx, [1, 0, 0, 1], 0, 0);
    if ctx.overflow {
        return None;
    }
    Some(
        ctx.best
            .into_iter()
            .enumerate()
            .map(|(n, (v, bits))| LevelMax {
                n,
                max_entry: BigInt::from(v),
                argmax: ProductWord((0..n).rev().map(|i| bits >> i & 1 == 1).collect()),
            })
            .collect(),
    )
}

fn dfs_big(max_len: usize, x: i64, y: i64) -> Vec<LevelMax> {
    fn visit(
        m: &Mat2,
        depth: usize,
        word: &mut Vec<bool>,
        max_len: usize,
        gens: &(BigInt, BigInt),
        best: &mut Vec<Option<(BigInt, Vec<bool>)>>,
    ) {
        let top = m.max_abs_entry();
        if best[depth].as_ref().is_none_or(|(b, _)| top > *b) {
            best[depth] = Some((top, word.clone()));
        }
        if depth == max_len {
            return;
        }
        for bit in [false, true] {
            let mut next = m.clone();
            if bit {
                next.mul_gen_b_assign(&gens.1);
            } else {
                next.mul_gen_a_assign(&gens.0);
            }
            word.push(bit);
            visit(&next, depth + 1, word, max_len, gens, best);
            word.pop();
        }
    }
    let gens = (BigInt::from(x), BigInt::from(y));
    let mut best = vec![None; max_len + 1];
    visit(
        &Mat2::identity(),
        0,
        &mut Vec::new(),
        max_len,
        &gens,
        &mut best,
    );
    best.into_iter()
        .enumerate()
        .map(|(n, b)| {
            let (max_entry, bits) = b.expect("every level is visited");
            LevelMax {
                n,
                max_entry,
                argmax: ProductWord(bits),
            }
        })
        .collect()
}

/// Largest |entry| over all `2^n` products of length `n`, with the
/// lexicographically least maximizing word.
pub fn max_entry_exhaustive(n: usize, x: i64, y: i64) -> Result<(BigInt, ProductWord)> {
    let mut levels = max_entries_by_length(n, x, y)?;
    let top = levels.pop().expect("level n exists");
    Ok((top.max_entry, top.argmax))
}

/// `(pattern)^(n / |pattern|)` by repeated squaring.
pub fn pattern_power(pattern: &ProductWord, n: usize, x: i64, y: i64) -> Result<Mat2> {
    if pattern.is_empty() {
        return Err(Error::invalid("pattern must be nonempty"));
    }
    if !n.is_multiple_of(pattern.len()) {
        return Err(Error::invalid(format!(
            "length {n} is not a multiple of the pattern length {}",
            pattern.len()
        )));
    }
    Ok(eval_product(pattern, x, y).pow((n / pattern.len()) as u64))
}

/// Fitted growth base together with the window it was computed on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthBase {
    pub base: f64,
    pub from_n: u64,
    pub to_n: u64,
}

/// Estimate of `lim v(n)^(1/n)` as `exp((ln v(to) - ln v(from)) / (to - from))`,
/// with `to` the last point and `from` the point in the middle of the list
/// (the window is the second half of the data).
pub fn growth_base(values: &[(u64, BigInt)]) -> Result<GrowthBase> {
    if values.len() < 2 {
        return Err(Error::invalid("growth base needs at least two points"));
    }
    if values.iter().any(|(_, v)| !v.is_positive()) {
        return Err(Error::invalid("growth base needs positive values"));
    }
    if values.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::invalid("lengths must be strictly increasing"));
    }
    let last = values.len() - 1;
    let mid = last / 2;
    let (n0, v0) = &values[mid];
    let (n1, v1) = &values[last];
    let base = ((ln_abs(v1) - ln_abs(v0)) / (n1 - n0) as f64).exp();
    Ok(GrowthBase {
        base,
        from_n: *n0,
        to_n: *n1,
    })
}

/// Per-trial summary of random products of length `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthStats {
    pub n: usize,
    pub trials: u64,
    pub x: i64,
    pub y: i64,
    pub seed: u64,
    /// log10 of the largest |entry| of each trial's product, in trial order.
    pub log10_max: Vec<f64>,
    pub mean: f64,
    /// Nearest-rank median.
    pub median: f64,
    pub min: f64,
    pub max: f64,
    /// `exp(mean ln(max entry) / n)`; absent for `n = 0`.
    pub generic_base: Option<f64>,
    /// `(arithmetic mean of max entries)^(1/n)`; absent for `n = 0`.
    pub mean_base: Option<f64>,
}

/// Uniform random product word of length `n`.
pub fn random_product_word<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ProductWord {
    ProductWord((0..n).map(|_| rng.gen::<bool>()).collect())
}

/// Monte Carlo statistics over `trials` uniform words; trial `i` uses substream
/// `i` of `seed`, so the result does not depend on scheduling.
pub fn random_product_stats(
    n: usize,
    trials: u64,
    x: i64,
    y: i64,
    seed: Seed,
) -> Result<GrowthStats> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let maxima: Vec<BigInt> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let word = random_product_word(n, &mut seed.stream(i));
            eval_product(&word, x, y).max_abs_entry()
        })
        .collect();
    let log10_max: Vec<f64> = maxima.iter().map(crate::stats::log10_abs).collect();
    let mut sorted = log10_max.clone();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    let (generic_base, mean_base) = if n == 0 {
        (None, None)
    } else {
        let generic = (mean * std::f64::consts::LN_10 / n as f64).exp();
        let sum: BigInt = maxima.iter().sum();
        let ln_mean = ln_biguint(sum.magnitude()) - (trials as f64).ln();
        (Some(generic), Some((ln_mean / n as f64).exp()))
    };
    Ok(GrowthStats {
        n,
        trials,
        x,
        y,
        seed: seed.0,
        mean,
        median: nearest_rank(&sorted, 0.5).unwrap_or(0.0),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
        log10_max,
        generic_base,
        mean_base,
    })
}

/// Exact averages of the first-row entries `(a_n, b_n)` of `(1, 0) · w(A, B)`
/// over all `2^n` words, by enumeration.
pub fn exact_average_entries(n: usize, x: i64, y: i64) -> Result<(BigRational, BigRational)> {
    if n > MAX_AVERAGE_LEN {
        return Err(Error::budget(
            "exact average enumeration (length)",
            n,
            MAX_AVERAGE_LEN,
        ));
    }
    fn visit(
        a: &BigInt,
        b: &BigInt,
        depth: usize,
        x: &BigInt,
        y: &BigInt,
        sums: &mut (BigInt, BigInt),
    ) {
        if depth == 0 {
            sums.0 += a;
            sums.1 += b;
            return;
        }
        // (a, b) · A(x) = (a, x a + b);  (a, b) · B(y) = (a + y b, b)
        visit(a, &(a * x + b), depth - 1, x, y, sums);
        visit(&(a + y * b), b, depth - 1, x, y, sums);
    }
    let (bx, by) = (BigInt::from(x), BigInt::from(y));
    let mut sums = (BigInt::zero(), BigInt::zero());
    visit(&BigInt::one(), &BigInt::zero(), n, &bx, &by, &mut sums);
    let total = BigInt::one() << n;
    Ok((
        BigRational::new(sums.0, total.clone()),
        BigRational::new(sums.1, total),
    ))
}

/// The same averages from the expectation recurrence
/// `E[a_n] = E[a] + (y/2) E[b]`, `E[b_n] = (x/2) E[a] + E[b]`.
pub fn expected_first_row(n: usize, x: i64, y: i64) -> (BigRational, BigRational) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let hx = BigRational::from_integer(x.into()) * &half;
    let hy = BigRational::from_integer(y.into()) * &half;
    let mut ea = BigRational::one();
    let mut eb = BigRational::zero();
    for _ in 0..n {
        let na = &ea + &hy * &eb;
        let nb = &hx * &ea + &eb;
        ea = na;
        eb = nb;
    }
    (ea, eb)
}

/// True iff the two words evaluate to the same integer matrix.
pub fn check_relation(u: &ProductWord, v: &ProductWord, x: i64, y: i64) -> bool {
    eval_product(u, x, y) == eval_product(v, x, y)
}

/// Largest spectral radius per letter, `max rho(w)^(1/|w|)`, over all words of
/// length `1..=max_len`. For `SL2` the spectral radius is determined by the
/// trace alone.
pub fn spectral_growth_base(max_len: usize, x: i64, y: i64) -> f64 {
    let mut best: f64 = 1.0;
    for len in 1..=max_len.min(16) {
        for bits in 0u32..(1 << len) {
            let w = ProductWord((0..len).map(|i| bits >> i & 1 == 1).collect());
            let t = eval_product(&w, x, y)
                .trace()
                .to_f64()
                .unwrap_or(f64::INFINITY)
                .abs();
            if t > 2.0 {
                let rho = t / 2.0 + (t * t / 4.0 - 1.0).sqrt();
                best = best.max(rho.powf(1.0 / len as f64));
            }
        }
    }
    best
}

/// Whether the products of `A(x)`, `B(y)` are known to form a free semigroup
/// (positive parameters, or both parameters of absolute value at least 2).
pub fn generates_free_semigroup(x: i64, y: i64) -> bool {
    (x > 0 && y > 0) || (x.abs() >= 2 && y.abs() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pw(s: &str) -> ProductWord {
        ProductWord::parse(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            eval_product(&ProductWord::default(), 2, 2),
            Mat2::identity()
        );
        assert_eq!(eval_product(&pw("01"), 2, 2), Mat2::new(5, 2, 2, 1));
        assert_eq!(eval_product(&pw("AB"), 2, 2), Mat2::new(5, 2, 2, 1));
    }

    #[test]
    fn products_have_unit_determinant() {
        let mut rng = Seed(1).stream(0);
        for _ in 0..200 {
            let w = random_product_word(rng.gen_range(0..60), &mut rng);
            for (x, y) in [(2, 2), (2, -2), (1, -1), (3, 5)] {
                assert_eq!(eval_product(&w, x, y).det(), BigInt::one());
            }
        }
    }

    /// Oracle: evaluate every word of length n by full matrix multiplication.
    fn brute_max(n: usize, x: i64, y: i64) -> (BigInt, ProductWord) {
        let mut best: Option<(BigInt, ProductWord)> = None;
        for bits in 0u32..(1 << n) {
            let w = ProductWord((0..n).rev().map(|i| bits >> i & 1 == 1).collect());
            let mut m = Mat2::identity();
            for &b in w.bits() {
                m = &m * &if b { Mat2::gen_b(y) } else { Mat2::gen_a(x) };
            }
            let top = m.max_abs_entry();
            if best.as_ref().is_none_or(|(v, _)| top > *v) {
                best = Some((top, w));
            }
        }
        best.unwrap()
    }

    #[test]
    fn exhaustive_matches_brute_force() {
        for (x, y) in [(2, 2), (2, -2), (1, -1), (3, -1)] {
            for n in 0..=10 {
                assert_eq!(
                    max_entry_exhaustive(n, x, y).unwrap(),
                    brute_max(n, x, y),
                    "({x},{y}) n={n}"
                );
            }
        }
    }

    #[test]
    fn bigint_path_agrees_with_i128_path() {
        let fast = dfs_i128(12, 3, -2).unwrap();
        let slow = dfs_big(12, 3, -2);
        assert_eq!(fast, slow);
        // entries overflow i128 quickly here
        assert!(dfs_i128(20, 1 << 40, 1 << 40).is_none());
        let big = max_entries_by_length(6, 1 << 40, 1 << 40).unwrap();
        assert_eq!(big[6].max_entry, brute_max(6, 1 << 40, 1 << 40).0);
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(max_entry_exhaustive(1, 2, 2).unwrap().0, BigInt::from(2));
        let (m, w) = max_entry_exhaustive(8, 2, 2).unwrap();
        assert_eq!(m, BigInt::from(985));
        assert_eq!(w, pw("ABABABAB"));
        let (_, w) = max_entry_exhaustive(8, 2, -2).unwrap();
        let abba = pw("ABBAABBA");
        let rotations: Vec<ProductWord> = (0..8).map(|k| abba.rotate(k)).collect();
        assert!(rotations.contains(&w), "argmax {w}");
        assert!(max_entry_exhaustive(25, 2, 2).is_err());
    }

    #[test]
    fn pattern_power_examples() {
        assert_eq!(
            pattern_power(&pw("AB"), 8, 2, 2).unwrap(),
            Mat2::new(985, 408, 408, 169)
        );
        let m = pattern_power(&pw("ABBA"), 4, 2, -2).unwrap();
        assert_eq!(m, Mat2::new(-7, -12, -4, -7));
        assert_eq!(m.trace().abs(), BigInt::from(14));
        assert_eq!(m.det(), BigInt::one());
        assert!(pattern_power(&pw("AB"), 7, 2, 2).is_err());
        assert!(pattern_power(&ProductWord::default(), 4, 2, 2).is_err());
    }

    #[test]
    fn alternating_pattern_is_linear_at_minus_two() {
        for n in (2..=1000).step_by(2) {
            let m = pattern_power(&pw("AB"), n, 2, -2).unwrap().max_abs_entry();
            assert!(m <= BigInt::from(4 * n as i64 + 4), "n={n}: {m}");
        }
    }

    #[test]
    fn growth_base_examples() {
        let pts: Vec<(u64, BigInt)> = (1..20u64)
            .map(|n| (n, BigInt::from(3).pow(n as u32)))
            .collect();
        assert!((growth_base(&pts).unwrap().base - 3.0).abs() < 1e-12);
        assert!(growth_base(&pts[..1]).is_err());
        assert!(growth_base(&[(1, BigInt::from(2)), (2, BigInt::zero())]).is_err());
        assert!(growth_base(&[(2, BigInt::from(2)), (1, BigInt::from(3))]).is_err());
    }

    #[test]
    fn growth_stats_empty_product() {
        let s = random_product_stats(0, 10, 2, 2, Seed(1)).unwrap();
        assert!(s.log10_max.iter().all(|&v| v == 0.0));
        assert_eq!((s.mean, s.median, s.min, s.max), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(s.generic_base, None);
        assert!(random_product_stats(5, 0, 2, 2, Seed(1)).is_err());
    }

    #[test]
    fn growth_stats_are_deterministic() {
        let a = random_product_stats(50, 40, 2, -2, Seed(3)).unwrap();
        let b = random_product_stats(50, 40, 2, -2, Seed(3)).unwrap();
        assert_eq!(a, b);
        assert!(a.min <= a.median && a.median <= a.max);
    }

    #[test]
    fn average_entries_examples() {
        let (ea, eb) = exact_average_entries(1, 2, 2).unwrap();
        assert_eq!((ea, eb), (BigRational::one(), BigRational::one()));
        let (ea, eb) = exact_average_entries(10, 2, 2).unwrap();
        let expected = BigRational::from_integer(BigInt::from(512));
        assert_eq!(ea, expected);
        assert_eq!(eb, expected);
        let (ma, mb) = exact_average_entries(10, 2, -2).unwrap();
        assert!(ma.abs() < expected && mb.abs() < expected);
        assert!(exact_average_entries(21, 2, 2).is_err());
    }

    #[test]
    fn enumeration_matches_recurrence() {
        for (x, y) in [(2, 2), (2, -2), (3, 1), (1, -1)] {
            for n in 0..=12 {
                assert_eq!(
                    exact_average_entries(n, x, y).unwrap(),
                    expected_first_row(n, x, y)
                );
            }
        }
    }

    #[test]
    fn braid_relation() {
        let (aba, bab) = (pw("ABA"), pw("BAB"));
        assert!(check_relation(&aba, &bab, 1, -1));
        assert_eq!(eval_product(&aba, 1, -1), Mat2::new(0, 1, -1, 0));
        assert!(!check_relation(&aba, &bab, 2, 2));
        assert!(check_relation(&aba, &aba, 2, 2));
    }

    #[test]
    fn spectral_bases() {
        assert!((spectral_growth_base(8, 2, 2) - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        assert!((spectral_growth_base(8, 2, -2) - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn free_semigroup_rule() {
        assert!(generates_free_semigroup(2, 2));
        assert!(generates_free_semigroup(1, 1));
        assert!(generates_free_semigroup(2, -2));
        assert!(!generates_free_semigroup(1, -1));
    }
}
