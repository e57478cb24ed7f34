//! Instrumented group-theoretic algorithms and the harness that measures
//! their average-case cost.
//!
//! The crate is organized by subsystem:
//!
//! - [`words`]: free-group words, reduction, counting, sampling and enumeration.
//! - [`whitehead`]: Whitehead graphs, Whitehead automorphisms, the prefix
//!   fast check, the Whitehead descent and their composition.
//! - [`subwords`]: exact counts of reduced words avoiding forbidden subwords
//!   or having an incomplete Whitehead graph.
//! - [`matgrowth`]: entry growth in products of `A(x)`, `B(y)` in `SL2(Z)`.
//! - [`cayleyhash`]: Cayley hashing in `SL2(F_p)` and collision-free length bounds.
//! - [`wordproblem`]: two-tier word-problem solvers (free, free abelian, Heisenberg).
//! - [`bench`]: Monte Carlo and exhaustive average-cost estimators, CSV/JSON output.
//!
//! Every randomized routine takes a [`Seed`]; identical seeds give identical
//! results regardless of thread count or platform.

pub mod bench;
pub mod cayleyhash;
mod error;
pub mod matgrowth;
mod rng;
pub mod stats;
pub mod subwords;
pub mod whitehead;
pub mod wordproblem;
pub mod words;

pub use error::{Error, Result};
pub use rng::{mix, Seed};
pub use words::{Letter, SamplingModel, Word};
