//! Quadruples `m₁ + m₂ = m₃ + m₄` read as solutions of the S-unit equation
//! `u₁ + u₂ − u₃ = 1` with `uᵢ = mᵢ / m₄`, and the Evertse bound on the
//! number of such solutions.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::smooth::{is_smooth_over, SmoothSet};
use crate::Natural;

/// Largest set accepted by [`census`].
pub const CENSUS_LIMIT: usize = 4096;

/// `(u₁, u₂, u₃)` with `u₁ + u₂ − u₃ = 1`, every component in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SUnitTriple<T: Clone + Integer> {
    pub u1: Ratio<T>,
    pub u2: Ratio<T>,
    pub u3: Ratio<T>,
}

impl<T> SUnitTriple<T>
where
    T: Clone + Integer + Signed + ToPrimitive,
{
    /// `u₁ + u₂ − u₃ = 1`.
    pub fn satisfies_equation(&self) -> bool {
        &self.u1 + &self.u2 - &self.u3 == Ratio::one()
    }

    /// Every nonempty subsum of `(u₁, u₂, −u₃)` is nonzero.
    pub fn is_nondegenerate(&self) -> bool {
        let terms = [self.u1.clone(), self.u2.clone(), -self.u3.clone()];
        (1u8..8).all(|mask| {
            let s: Ratio<T> = (0..3)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| terms[i].clone())
                .fold(Ratio::zero(), |a, b| a + b);
            !s.is_zero()
        })
    }

    /// Numerators and denominators factor over `primes`.
    pub fn is_unit_over(&self, primes: &[u64]) -> bool {
        [&self.u1, &self.u2, &self.u3].iter().all(|u| {
            let smooth = |v: &T| v.abs().to_u128().is_some_and(|n| n > 0 && is_smooth_over(n, primes));
            smooth(u.numer()) && smooth(u.denom())
        })
    }
}

impl<T: Clone + Integer + fmt::Display> fmt::Display for SUnitTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u1, self.u2, self.u3)
    }
}

/// `(m₁/m₄, m₂/m₄, m₃/m₄)` for a nontrivial quadruple.
pub fn triple_of_quadruple<T>(m: [Natural; 4]) -> Result<SUnitTriple<T>>
where
    T: Clone + Integer + Signed + ToPrimitive + FromPrimitive,
{
    let [m1, m2, m3, m4] = m;
    if m.contains(&0) {
        return Err(Error::precondition("entries must be positive"));
    }
    if m1.checked_add(m2) != m3.checked_add(m4) || m1.checked_add(m2).is_none() {
        return Err(Error::precondition(format!("{m1} + {m2} ≠ {m3} + {m4}")));
    }
    if m1 == m3 || m1 == m4 {
        return Err(Error::precondition("trivial quadruple (m₁ ∈ {m₃, m₄})"));
    }
    let conv = |v: Natural| T::from_u128(v).ok_or_else(|| Error::overflow(format!("{v} does not fit")));
    let d = conv(m4)?;
    let triple = SUnitTriple {
        u1: Ratio::new(conv(m1)?, d.clone()),
        u2: Ratio::new(conv(m2)?, d.clone()),
        u3: Ratio::new(conv(m3)?, d),
    };
    if !triple.satisfies_equation() {
        return Err(Error::invariant("constructed triple misses u₁ + u₂ − u₃ = 1"));
    }
    Ok(triple)
}

/// Census of the quadruple set of one smooth set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    /// `|T|`.
    pub total: u128,
    /// `|T*|`.
    pub nontrivial: u128,
    /// Distinct nondegenerate triples `(u₁, u₂, u₃)` arising from `T*`.
    pub distinct_triples: u128,
    /// Quadruples in `T*` whose triple has a vanishing subsum.
    pub degenerate: u128,
}

fn gcd4(m: [Natural; 4]) -> Natural {
    m.iter().fold(0, |g, &v| g.gcd(&v))
}

/// A nontrivial quadruple has a vanishing subsum of `(u₁, u₂, −u₃)` only if
/// `m₁ = m₃` or `m₂ = m₃`.
fn is_degenerate(m: [Natural; 4]) -> bool {
    m[0] == m[2] || m[1] == m[2]
}

/// Visits every nontrivial quadruple, grouping unordered pair representations by sum.
fn for_each_nontrivial(a: &[Natural], mut visit: impl FnMut([Natural; 4])) -> u128 {
    let mut pairs: Vec<(Natural, u32, u32)> = Vec::with_capacity(a.len() * (a.len() + 1) / 2);
    for i in 0..a.len() {
        for j in i..a.len() {
            pairs.push((a[i] + a[j], i as u32, j as u32));
        }
    }
    pairs.sort_unstable();
    let ordered = |&(_, i, j): &(Natural, u32, u32)| -> Vec<(Natural, Natural)> {
        let (x, y) = (a[i as usize], a[j as usize]);
        if i == j {
            vec![(x, y)]
        } else {
            vec![(x, y), (y, x)]
        }
    };
    let mut total = 0u128;
    for group in pairs.chunk_by(|p, q| p.0 == q.0) {
        let reps: Vec<_> = group.iter().map(ordered).collect();
        let weight: u128 = reps.iter().map(|r| r.len() as u128).sum();
        total += weight * weight;
        for (ri, r) in reps.iter().enumerate() {
            for (si, s) in reps.iter().enumerate() {
                if ri == si {
                    continue;
                }
                for &(m1, m2) in r {
                    for &(m3, m4) in s {
                        visit([m1, m2, m3, m4]);
                    }
                }
            }
        }
    }
    total
}

/// Counts `|T|`, `|T*|` and the distinct S-unit triples of `T*`.
///
/// `S(x, y)` is closed under taking divisors, so two quadruples give the same
/// triple exactly when they are proportional, and each class contains exactly
/// one quadruple with `gcd(m₁, m₂, m₃, m₄) = 1`.
pub fn census(set: &SmoothSet) -> Result<CensusReport> {
    let a = set.elements();
    if a.len() > CENSUS_LIMIT {
        return Err(Error::LimitExceeded {
            what: "|A| for census",
            value: a.len() as u128,
            limit: CENSUS_LIMIT as u128,
        });
    }
    let mut nontrivial = 0u128;
    let mut distinct = 0u128;
    let mut degenerate = 0u128;
    let total = for_each_nontrivial(a, |m| {
        nontrivial += 1;
        if is_degenerate(m) {
            degenerate += 1;
        } else if gcd4(m) == 1 {
            distinct += 1;
        }
    });
    Ok(CensusReport {
        total,
        nontrivial,
        distinct_triples: distinct,
        degenerate,
    })
}

/// Every distinct nondegenerate triple of a set, built as exact rationals.
///
/// Works for any set, not only divisor-closed ones; intended for small inputs.
pub fn distinct_triples<T>(a: &[Natural]) -> Result<HashSet<SUnitTriple<T>>>
where
    T: Clone + Integer + Signed + ToPrimitive + FromPrimitive + std::hash::Hash,
{
    let mut out = HashSet::new();
    let mut err = None;
    for_each_nontrivial(a, |m| {
        if err.is_some() || is_degenerate(m) {
            return;
        }
        match triple_of_quadruple::<T>(m) {
            Ok(t) => {
                out.insert(t);
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `|T*| ≤ distinct_triples · |A|`: each triple and each `m₄` fix the quadruple.
pub fn fiber_bound_holds(report: &CensusReport, size: usize) -> bool {
    report.nontrivial <= report.distinct_triples * size as u128
}

pub fn fiber_bound_check(set: &SmoothSet) -> Result<bool> {
    Ok(fiber_bound_holds(&census(set)?, set.len()))
}

/// `ln` of `(2³⁵ n²)^{n³ s}`, the Evertse bound on nondegenerate solutions.
pub fn evertse_log_bound(n_terms: u32, s: u32) -> Result<f64> {
    if n_terms == 0 {
        return Err(Error::domain("the equation needs at least one term"));
    }
    let n = n_terms as f64;
    Ok(n.powi(3) * s as f64 * (35.0 * std::f64::consts::LN_2 + 2.0 * n.ln()))
}

/// Whether the census count of triples sits under the three-term bound with `s = π(y)`.
pub fn evertse_consistent(report: &CensusReport, prime_count: usize) -> Result<bool> {
    let bound = evertse_log_bound(3, prime_count as u32)?;
    Ok((report.distinct_triples.max(1) as f64).ln() <= bound)
}

pub fn evertse_consistency(set: &SmoothSet) -> Result<bool> {
    evertse_consistent(&census(set)?, set.basis().count())
}
