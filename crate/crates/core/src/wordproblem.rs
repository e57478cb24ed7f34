//! Instrumented word-problem solvers for free groups, free abelian groups and
//! the discrete Heisenberg group, the last one run as a two-tier algorithm
//! (abelianization first, exact evaluation only when that is inconclusive).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::words::{sample_word, SamplingModel};
use crate::{Error, Result, Seed, Word};

/// Exponent-sum vector in `Z^r`.
pub fn abelianization(w: &Word) -> Vec<i64> {
    w.exponent_sums()
}

/// `(a, b, c)` standing for the matrix `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl HeisenbergElement {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        HeisenbergElement {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')`.
    pub fn mul(&self, o: &Self) -> Self {
        HeisenbergElement {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c + &self.a * &o.b,
        }
    }

    pub fn inverse(&self) -> Self {
        HeisenbergElement {
            a: -&self.a,
            b: -&self.b,
            c: &self.a * &self.b - &self.c,
        }
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Cost units: letters read plus big-integer operations, each weighted by the
/// number of 64-bit limbs of its largest operand.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpCost {
    pub letters_read: u64,
    pub bigint_ops: u64,
}

impl WpCost {
    pub fn total(&self) -> u64 {
        self.letters_read + self.bigint_ops
    }
}

impl std::ops::Add for WpCost {
    type Output = WpCost;

    fn add(self, o: WpCost) -> WpCost {
        WpCost {
            letters_read: self.letters_read + o.letters_read,
            bigint_ops: self.bigint_ops + o.bigint_ops,
        }
    }
}

fn limbs(v: &BigInt) -> u64 {
    v.bits().div_ceil(64).max(1)
}

fn check_heisenberg_rank(w: &Word) -> Result<()> {
    if w.rank() != 2 {
        return Err(Error::invalid(format!(
            "Heisenberg words use two generators, got rank {}",
            w.rank()
        )));
    }
    Ok(())
}

/// Left-to-right evaluation with `x = (1, 0, 0)` and `y = (0, 1, 0)`, counting
/// the work done.
fn heisenberg_eval_counted(w: &Word) -> (HeisenbergElement, WpCost) {
    let mut g = HeisenbergElement::identity();
    let mut cost = WpCost::default();
    for l in w.letters() {
        cost.letters_read += 1;
        // right multiplication by a generator only touches one of a, b and
        // (for y) adds the current a into c
        match (l.generator(), l.is_positive()) {
            (1, true) => {
                cost.bigint_ops += limbs(&g.a);
                g.a += 1;
            }
            (1, false) => {
                cost.bigint_ops += limbs(&g.a);
                g.a -= 1;
            }
            (_, positive) => {
                cost.bigint_ops += limbs(&g.b) + limbs(&g.a).max(limbs(&g.c));
                if positive {
                    g.b += 1;
                    g.c += &g.a;
                } else {
                    g.b -= 1;
                    g.c -= &g.a;
                }
            }
        }
    }
    (g, cost)
}

pub fn heisenberg_eval(w: &Word) -> Result<HeisenbergElement> {
    check_heisenberg_rank(w)?;
    Ok(heisenberg_eval_counted(w).0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    Free,
    FreeAbelian(u32),
    Heisenberg,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Free => "free",
            Group::FreeAbelian(_) => "abelian",
            Group::Heisenberg => "heisenberg",
        }
    }
}

impl FromStr for Group {
    type Err = Error;

    /// `free`, `heisenberg`, `abelian` (rank 2) or `abelian:R`.
    fn from_str(s: &str) -> Result<Group> {
        match s {
            "free" => Ok(Group::Free),
            "heisenberg" => Ok(Group::Heisenberg),
            "abelian" => Ok(Group::FreeAbelian(2)),
            _ => match s.strip_prefix("abelian:").map(str::parse::<u32>) {
                Some(Ok(r)) if r >= 1 => Ok(Group::FreeAbelian(r)),
                _ => Err(Error::invalid(format!(
                    "unknown group {s:?} (expected free, abelian, abelian:R or heisenberg)"
                ))),
            },
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::FreeAbelian(r) if *r != 2 => write!(f, "abelian:{r}"),
            g => f.write_str(g.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    Tier1Abelianization,
    Tier2Exact,
}

impl Tier {
    pub fn label(self) -> &'static str {
        match self {
            Tier::Tier1Abelianization => "tier1_abelianization",
            Tier::Tier2Exact => "tier2_exact",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WPVerdict {
    pub is_identity: bool,
    pub decided_by: Tier,
    pub cost: WpCost,
}

/// Decides `w = 1` in `group`.
///
/// Free and free abelian groups are solved directly (free reduction with a
/// stack, exponent sums) and labelled [`Tier::Tier2Exact`], since the answer
/// may be "identity". The Heisenberg group first compares the abelianization
/// with zero and only evaluates exactly when it vanishes.
pub fn wp_composite(group: Group, w: &Word) -> Result<WPVerdict> {
    let n = w.len() as u64;
    match group {
        Group::Free => {
            // one push or pop per letter
            let reduced = w.reduce();
            Ok(WPVerdict {
                is_identity: reduced.is_empty(),
                decided_by: Tier::Tier2Exact,
                cost: WpCost {
                    letters_read: n,
                    bigint_ops: n,
                },
            })
        }
        Group::FreeAbelian(r) => {
            if w.rank() != r {
                return Err(Error::invalid(format!(
                    "word has rank {} but the group has rank {r}",
                    w.rank()
                )));
            }
            let sums = abelianization(w);
            Ok(WPVerdict {
                is_identity: sums.iter().all(|&e| e == 0),
                decided_by: Tier::Tier2Exact,
                cost: WpCost {
                    letters_read: n,
                    bigint_ops: r as u64,
                },
            })
        }
        Group::Heisenberg => {
            check_heisenberg_rank(w)?;
            let tier1 = WpCost {
                letters_read: n,
                bigint_ops: 2,
            };
            if abelianization(w).iter().any(|&e| e != 0) {
                return Ok(WPVerdict {
                    is_identity: false,
                    decided_by: Tier::Tier1Abelianization,
                    cost: tier1,
                });
            }
            let (g, tier2) = heisenberg_eval_counted(w);
            Ok(WPVerdict {
                is_identity: g.c.is_zero(),
                decided_by: Tier::Tier2Exact,
                cost: tier1 + tier2,
            })
        }
    }
}

/// Observed frequency of an event over Monte Carlo trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frequency {
    pub hits: u64,
    pub trials: u64,
}

impl Frequency {
    pub fn value(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.hits.into(), self.trials.into())
    }

    /// Binomial standard error of [`Frequency::value`].
    pub fn std_error(&self) -> f64 {
        let q = self.value();
        (q * (1.0 - q) / self.trials as f64).sqrt()
    }
}

/// How often a uniform word of length `n` over `x, y, X, Y` has zero
/// abelianization (so the two-tier solver must run its second tier).
pub fn tier2_frequency(n: usize, trials: u64, seed: Seed) -> Result<Frequency> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let w = sample_word(2, n, SamplingModel::AllWords, &mut seed.stream(i));
            abelianization(&w).iter().all(|&e| e == 0)
        })
        .count() as u64;
    Ok(Frequency { hits, trials })
}

/// Exact probability that a uniform word of length `n` over `x, y, X, Y` has
/// zero abelianization: `(C(2m, m) / 4^m)^2` for `n = 2m`, and 0 for odd `n`.
pub fn tier2_probability_exact(n: usize) -> BigRational {
    if n % 2 == 1 {
        return BigRational::zero();
    }
    let m = n / 2;
    // C(2m, m) built incrementally
    let mut binom = BigInt::one();
    for k in 0..m {
        binom = binom * (2 * m - k) / (k + 1);
    }
    let one_dim = BigRational::new(binom, BigInt::one() << (2 * m));
    &one_dim * &one_dim
}
