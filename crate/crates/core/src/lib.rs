//! Exact sum/product set computations on smooth-number sets.
//!
//! `S(x, y)` is the set of positive integers `n ≤ x` with no prime factor
//! above `y`, and `Ψ(x, y) = |S(x, y)|`. This crate enumerates these sets,
//! counts them with a memoized recurrence, computes `A + A`, `A · A` and the
//! additive energy exactly, checks the inequalities that hold at every
//! finite scale, and compares measured exponents with closed-form
//! predictions.
//!
//! Counting and set arithmetic are integer-exact over [`Natural`]. The
//! estimators in [`asymptotics`] are generic over the float type. The `f64`
//! aliases below are what the rest of the crate uses.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod expt;
pub mod psi;
pub mod setops;
pub mod smooth;
pub mod sunit;

pub use error::{Error, Result};
pub use psi::{psi_exact, PsiMemo};
pub use setops::{IntegerSet, QuadrupleCensus};
pub use smooth::{enumerate_smooth, primes_upto, PrimeBasis, SmoothParams, SmoothSet};

/// Integer width for set elements, sums and products. Covers `x²` for `x ≤ 2⁶⁴`.
pub type Natural = u128;

/// Float type used by the sweep and report code.
pub type Real = f64;

pub type RegimeSpec = asymptotics::RegimeSpec<Real>;
pub type Exponent = asymptotics::Exponent<Real>;
pub type ExponentPrediction = asymptotics::ExponentPrediction<Real>;
pub type EstimateReport = asymptotics::EstimateReport<Real>;

/// S-unit triples over 128-bit rationals.
pub type SUnitTriple = sunit::SUnitTriple<i128>;
