//! Primes, largest-prime-factor arithmetic and enumeration of `S(x, y)`.
//!
//! Membership is decided with integer arithmetic only. A real smoothness
//! bound `y` only matters through the primes `p ≤ y`, so everything here
//! works from a [`PrimeBasis`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::Natural;

/// Largest `⌊x⌋` accepted by [`psi_bruteforce`].
pub const BRUTEFORCE_LIMIT: u128 = 100_000_000;

/// Validated `(x, y)` with `x ≥ y ≥ 2`, both finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmoothParams {
    x: f64,
    y: f64,
}

impl SmoothParams {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::domain(format!("x = {x}, y = {y} must be finite")));
        }
        if y < 2.0 {
            return Err(Error::domain(format!("y = {y} must be at least 2")));
        }
        if x < y {
            return Err(Error::domain(format!("x = {x} must be at least y = {y}")));
        }
        Ok(SmoothParams { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// `⌊x⌋`, or an overflow error if it does not fit the integer width.
    pub fn floor_x(&self) -> Result<Natural> {
        exact::floor_u128(self.x)
    }

    /// `⌊y⌋`. Only the primes up to this value matter.
    pub fn floor_y(&self) -> Result<u64> {
        let y = exact::floor_u128(self.y)?;
        u64::try_from(y).map_err(|_| Error::overflow(format!("y = {} too large", self.y)))
    }
}

/// The ascending list of all primes `p ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `π(y)`.
    pub fn count(&self) -> usize {
        self.primes.len()
    }

    /// Largest prime in the basis, i.e. the canonical form of `y`.
    pub fn largest(&self) -> Option<u64> {
        self.primes.last().copied()
    }

    /// The first `k` primes.
    pub fn prefix(&self, k: usize) -> &[u64] {
        &self.primes[..k]
    }
}

/// Primes up to a real bound, by a plain sieve of Eratosthenes.
pub fn primes_upto(y: f64) -> Result<PrimeBasis> {
    if !(y >= 2.0) || !y.is_finite() {
        return Err(Error::domain(format!("prime bound {y} must be a finite value ≥ 2")));
    }
    let bound = exact::floor_u128(y)?;
    let bound = usize::try_from(bound)
        .ok()
        .filter(|&b| b <= 1 << 32)
        .ok_or_else(|| Error::LimitExceeded {
            what: "prime bound",
            value: bound,
            limit: 1 << 32,
        })?;
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for n in 2..=bound {
        if composite[n] {
            continue;
        }
        primes.push(n as u64);
        let mut m = n * n;
        while m <= bound {
            composite[m] = true;
            m += n;
        }
    }
    Ok(PrimeBasis { primes })
}

/// `P⁺(n)`, with `P⁺(1) = 1`. Trial division, so intended for `n < 2⁶⁴`.
pub fn largest_prime_factor(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("P⁺(0) is undefined"));
    }
    let mut n = n;
    let mut largest = 1;
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n % d == 0 {
            largest = d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        largest = largest.max(n);
    }
    Ok(largest)
}

/// Whether every prime factor of `n` is at most `y`.
pub fn is_smooth(n: Natural, y: f64) -> Result<bool> {
    if n == 0 {
        return Err(Error::domain("0 has no smoothness"));
    }
    let basis = primes_upto(y)?;
    Ok(is_smooth_over(n, basis.primes()))
}

/// Smoothness over an explicit prime list: divide out each prime and see
/// whether anything is left.
pub fn is_smooth_over(mut n: Natural, primes: &[u64]) -> bool {
    for &p in primes {
        let p = p as Natural;
        while n % p == 0 {
            n /= p;
        }
        if n == 1 {
            return true;
        }
    }
    n == 1
}

/// The sorted set `S(x, y)` together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothSet {
    params: SmoothParams,
    basis: PrimeBasis,
    elements: Vec<Natural>,
}

impl SmoothSet {
    pub fn params(&self) -> SmoothParams {
        self.params
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn elements(&self) -> &[Natural] {
        &self.elements
    }

    /// `Ψ(x, y)`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn into_elements(self) -> Vec<Natural> {
        self.elements
    }
}

/// Depth-first generation of every product of prime powers `≤ ⌊x⌋`, then sorted.
///
/// The output is `Ψ`-sized. Products that would overflow are necessarily
/// above `⌊x⌋` and are cut off.
pub fn enumerate_smooth(params: SmoothParams) -> Result<SmoothSet> {
    let limit = params.floor_x()?;
    let basis = primes_upto(params.y())?;
    let mut elements = smooth_upto(limit, basis.primes());
    elements.sort_unstable();
    Ok(SmoothSet {
        params,
        basis,
        elements,
    })
}

/// Unsorted smooth numbers `≤ limit` over `primes`.
pub(crate) fn smooth_upto(limit: Natural, primes: &[u64]) -> Vec<Natural> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    // Stack of (value, index of smallest prime still allowed).
    let mut stack = vec![(1 as Natural, 0usize)];
    while let Some((value, from)) = stack.pop() {
        out.push(value);
        for (i, &p) in primes.iter().enumerate().skip(from) {
            match value.checked_mul(p as Natural) {
                Some(next) if next <= limit => stack.push((next, i)),
                // primes ascend, so every later prime overshoots as well
                _ => break,
            }
        }
    }
    out
}

/// `Ψ(x, y)` by scanning `1..=⌊x⌋` with trial division by the primes `≤ y`.
///
/// Independent of the recurrence in [`crate::psi`]; refuses `⌊x⌋` above
/// [`BRUTEFORCE_LIMIT`].
pub fn psi_bruteforce(x: f64, y: f64) -> Result<u128> {
    let limit = exact::floor_u128(x)?;
    if limit > BRUTEFORCE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "⌊x⌋ for brute force",
            value: limit,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let basis = primes_upto(y)?;
    let primes: Vec<u64> = basis.primes().to_vec();
    let count = (1..=limit as u64)
        .filter(|&n| {
            let mut m = n;
            for &p in &primes {
                while m % p == 0 {
                    m /= p;
                }
            }
            m == 1
        })
        .count();
    Ok(count as u128)
}
