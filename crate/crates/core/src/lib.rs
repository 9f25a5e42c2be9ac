//! Exact computation of weighted representation functions
//! `r_{k1,k2}(A, n) = #{(a1, a2) in A^2 : n = k1*a1 + k2*a2}`
//! over subsets of the nonnegative integers given as unions of half-open
//! blocks, optionally extended to infinity by a scaling law
//! `t_{i+a} = k * t_i` on the block boundaries.
//!
//! Module map:
//!
//! * [`blockset`]: block sets, the scaling tail, complements and exact
//!   (rational) two-sided boundary extension.
//! * [`repcount`]: brute-force oracle, fast interval/progression counter and
//!   the classic unweighted counters `R1`, `R2`, `R3`.
//! * [`structure`]: tail detection and generation, the `(T, g)` selection,
//!   the decomposition `n = (k^g + 1) m + r` and the multiplicative
//!   dependence criterion for pairs of ratios.
//! * [`witness`]: explicit solution families for the three positional cases
//!   and the guaranteed linear lower bound.
//! * [`psilab`]: finite-horizon equality checks between a set and its
//!   complement, ratio scans and seed search.
//! * [`emit`]: JSON and CSV documents used by the command-line tool.
//!
//! All arithmetic is exact. Integers are `i128` with checked growth at the
//! points where powers of `k` appear; rationals are `Ratio<i128>`.

pub mod arith;
pub mod blockset;
pub mod emit;
pub mod error;
pub mod exec;
pub mod psilab;
pub mod repcount;
pub mod structure;
pub mod witness;

pub use arith::{Int, Rational};
pub use blockset::{BlockSet, BlockView, SetDocument, TailRule};
pub use error::{Error, Result};
pub use exec::Execution;
pub use psilab::{PsiReport, RatioScan, SeedCandidate};
pub use repcount::{ClassicVariant, WeightPair};
pub use structure::{Decomposition, GSelection, MultiplicativeProfile};
pub use witness::{CaseTag, QRange, Side, WitnessReport};
