//! Exact sumsets, productsets and additive energy, plus the inequalities
//! that hold for every finite set and can therefore be checked exactly.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::psi::{psi_count, PsiMemo};
use crate::smooth::{enumerate_smooth, is_smooth_over, primes_upto, SmoothParams, SmoothSet};
use crate::Natural;

/// Row blocks hold roughly this many pairs before being sorted and deduplicated.
const PAIR_BLOCK: usize = 1 << 21;
/// Slot caps for the dense paths: one bit per sum, or one `u32` count per sum.
const BITSET_CAP: u128 = 1 << 31;
const COUNTS_CAP: u128 = 1 << 25;
/// Dense counting is used when the sum range is at most this many times the pair count.
const DENSE_RATIO: u128 = 8;

/// A nonempty, strictly ascending set of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntegerSet {
    elements: Vec<Natural>,
}

impl IntegerSet {
    /// Validates an already sorted, duplicate-free list.
    pub fn new(elements: Vec<Natural>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::precondition("set must be nonempty"));
        }
        if elements[0] == 0 {
            return Err(Error::precondition("elements must be positive"));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::precondition("elements must be strictly ascending"));
        }
        Ok(IntegerSet { elements })
    }

    /// Sorts and deduplicates first.
    pub fn from_unsorted(mut elements: Vec<Natural>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[Natural] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> Natural {
        *self.elements.last().expect("nonempty")
    }

    pub fn contains(&self, n: Natural) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// Number of unordered pairs with repetition, `|A|(|A|+1)/2`.
    pub fn pair_count(&self) -> u128 {
        let n = self.len() as u128;
        n * (n + 1) / 2
    }
}

impl From<SmoothSet> for IntegerSet {
    fn from(set: SmoothSet) -> Self {
        // S(x, y) always contains 1 and is sorted
        IntegerSet {
            elements: set.into_elements(),
        }
    }
}

impl TryFrom<&SmoothSet> for IntegerSet {
    type Error = Error;

    fn try_from(set: &SmoothSet) -> Result<Self> {
        IntegerSet::new(set.elements().to_vec())
    }
}

fn checked_sum(a: Natural, b: Natural) -> Result<Natural> {
    a.checked_add(b)
        .ok_or_else(|| Error::overflow(format!("{a} + {b}")))
}

fn checked_product(a: Natural, b: Natural) -> Result<Natural> {
    a.checked_mul(b)
        .ok_or_else(|| Error::overflow(format!("{a} · {b}")))
}

/// Splits the rows `i` of the upper triangle `j ≥ i` into blocks of about
/// [`PAIR_BLOCK`] pairs.
fn row_blocks(n: usize) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut acc = 0;
    for i in 0..n {
        acc += n - i;
        if acc >= PAIR_BLOCK {
            blocks.push((start, i + 1));
            start = i + 1;
            acc = 0;
        }
    }
    if start < n {
        blocks.push((start, n));
    }
    blocks
}

fn merge_sorted(a: Vec<Natural>, b: Vec<Natural>) -> Vec<Natural> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        if a[i] == v {
            i += 1;
        }
        if b[j] == v {
            j += 1;
        }
        out.push(v);
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Distinct values of `op(a_i, a_j)` over `i ≤ j`, by blockwise sort and merge.
fn pairwise_distinct<F>(a: &[Natural], op: F) -> Result<Vec<Natural>>
where
    F: Fn(Natural, Natural) -> Result<Natural> + Sync,
{
    row_blocks(a.len())
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut vals = Vec::new();
            for i in lo..hi {
                for &b in &a[i..] {
                    vals.push(op(a[i], b)?);
                }
            }
            vals.sort_unstable();
            vals.dedup();
            Ok(vals)
        })
        .try_reduce(Vec::new, |x, y| Ok(merge_sorted(x, y)))
}

fn use_dense(a: &IntegerSet, cap: u128) -> Option<usize> {
    let range = a.max().checked_mul(2)? + 1;
    let pairs = a.pair_count();
    (range <= cap && range <= DENSE_RATIO * pairs.max(1 << 16)).then_some(range as usize)
}

/// `A + A`.
pub fn sumset(a: &IntegerSet) -> Result<IntegerSet> {
    checked_sum(a.max(), a.max())?;
    let e = a.elements();
    let elements = match use_dense(a, BITSET_CAP) {
        Some(range) => {
            let mut hit = vec![0u64; range.div_ceil(64)];
            for (i, &x) in e.iter().enumerate() {
                for &y in &e[i..] {
                    let s = (x + y) as usize;
                    hit[s / 64] |= 1 << (s % 64);
                }
            }
            let mut out = Vec::new();
            for (w, &word) in hit.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    out.push((w * 64 + b) as Natural);
                    bits &= bits - 1;
                }
            }
            out
        }
        None => pairwise_distinct(e, checked_sum)?,
    };
    IntegerSet::new(elements)
}

/// `A · A`.
pub fn productset(a: &IntegerSet) -> Result<IntegerSet> {
    checked_product(a.max(), a.max())?;
    IntegerSet::new(pairwise_distinct(a.elements(), checked_product)?)
}

/// Counts of the quadruples `m₁ + m₂ = m₃ + m₄` over a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadrupleCensus {
    /// `|T|`.
    pub total: u128,
    /// Quadruples with `m₁ = m₃` or `m₁ = m₄`; always `2|A|² − |A|`.
    pub trivial: u128,
    /// `|T*|`.
    pub nontrivial: u128,
}

/// `2n² − n`: ordered quadruples whose second pair is the first pair or its swap.
pub fn trivial_quadruples(n: u128) -> u128 {
    2 * n * n - n
}

/// Additive energy from the ordered representation counts `r(s)`.
pub fn additive_energy(a: &IntegerSet) -> Result<QuadrupleCensus> {
    checked_sum(a.max(), a.max())?;
    let e = a.elements();
    let total: u128 = match use_dense(a, COUNTS_CAP) {
        Some(range) => {
            let mut r = vec![0u32; range];
            for (i, &x) in e.iter().enumerate() {
                r[(x + x) as usize] += 1;
                for &y in &e[i + 1..] {
                    r[(x + y) as usize] += 2;
                }
            }
            r.iter().map(|&c| (c as u128) * (c as u128)).sum()
        }
        None => {
            let mut sums = Vec::with_capacity(a.pair_count() as usize);
            for (i, &x) in e.iter().enumerate() {
                for &y in &e[i..] {
                    sums.push(x + y);
                }
            }
            sums.par_sort_unstable();
            // each unordered pair {x, y} with x ≠ y contributes 2 ordered pairs
            let mut total = 0u128;
            let mut idx = 0;
            while idx < sums.len() {
                let s = sums[idx];
                let run = sums[idx..].iter().take_while(|&&v| v == s).count();
                let diagonal = (s % 2 == 0 && a.contains(s / 2)) as u128;
                let ordered = 2 * run as u128 - diagonal;
                total += ordered * ordered;
                idx += run;
            }
            total
        }
    };
    let n = a.len() as u128;
    let trivial = trivial_quadruples(n);
    let nontrivial = total
        .checked_sub(trivial)
        .ok_or_else(|| Error::invariant(format!("energy {total} below trivial count {trivial}")))?;
    Ok(QuadrupleCensus {
        total,
        trivial,
        nontrivial,
    })
}

/// The three counts of the product sandwich and whether both inequalities hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    /// `Ψ(x²/y, y)`.
    pub lower: u128,
    /// `|S(x,y) · S(x,y)|`.
    pub product: u128,
    /// `Ψ(x², y)`.
    pub upper: u128,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Counts `Ψ(x²/y, y)` and `Ψ(x², y)` only; the productset size is supplied.
pub fn sandwich_bounds(x: f64, y: f64, memo: &PsiMemo) -> Result<(u128, u128)> {
    SmoothParams::new(x, y)?;
    let basis = primes_upto(y)?;
    let lower = psi_count(exact::floor_square_over(x, y)?, &basis, memo);
    let upper = psi_count(exact::floor_square(x)?, &basis, memo);
    Ok((lower, upper))
}

pub fn sandwich_from_product(x: f64, y: f64, product: u128, memo: &PsiMemo) -> Result<SandwichReport> {
    let (lower, upper) = sandwich_bounds(x, y, memo)?;
    Ok(SandwichReport {
        lower,
        product,
        upper,
        lower_holds: lower <= product,
        upper_holds: product <= upper,
    })
}

/// Computes all three sandwich counts exactly.
pub fn sandwich_check(x: f64, y: f64, memo: &PsiMemo) -> Result<SandwichReport> {
    let set = IntegerSet::from(enumerate_smooth(SmoothParams::new(x, y)?)?);
    let product = productset(&set)?.len() as u128;
    sandwich_from_product(x, y, product, memo)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessCase {
    /// The largest divisor `d ≤ x` exceeds `x/y`.
    LargeDivisor,
    /// `n ≤ x/y` itself, witnessed as `n · 1`.
    Whole,
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessCase::LargeDivisor => "i",
            WitnessCase::Whole => "ii",
        })
    }
}

/// A factorization `n = d · e` with both factors in `S(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub n: Natural,
    pub d: Natural,
    pub e: Natural,
    pub case: WitnessCase,
}

/// Writes `n ∈ S(x²/y, y)` as a product of two elements of `S(x, y)`.
///
/// `d` is the largest divisor of `n` not exceeding `x`, found from the
/// exponent vector of `n`.
pub fn factor_witness(n: Natural, x: f64, y: f64) -> Result<FactorWitness> {
    let params = SmoothParams::new(x, y)?;
    if n == 0 {
        return Err(Error::precondition("n must be positive"));
    }
    let basis = primes_upto(y)?;
    if !is_smooth_over(n, basis.primes()) {
        return Err(Error::precondition(format!("{n} is not {y}-smooth")));
    }
    if n > exact::floor_square_over(x, y)? {
        return Err(Error::precondition(format!("{n} exceeds x²/y")));
    }
    let limit = params.floor_x()?;

    let mut factors = Vec::new();
    let mut rest = n;
    for &p in basis.primes() {
        let p = p as Natural;
        let mut k = 0u32;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if k > 0 {
            factors.push((p, k));
        }
    }

    let d = largest_divisor_upto(&factors, limit);
    let e = n / d;
    let case = if exact::exceeds_ratio(d, x, y)? {
        WitnessCase::LargeDivisor
    } else if d == n {
        WitnessCase::Whole
    } else {
        return Err(Error::invariant(format!(
            "largest divisor {d} of {n} is ≤ x/y but not n itself"
        )));
    };
    if d * e != n || d > limit || e > limit || !is_smooth_over(e, basis.primes()) {
        return Err(Error::invariant(format!("bad witness {n} = {d} · {e}")));
    }
    Ok(FactorWitness { n, d, e, case })
}

fn largest_divisor_upto(factors: &[(Natural, u32)], limit: Natural) -> Natural {
    fn go(factors: &[(Natural, u32)], acc: Natural, limit: Natural, best: &mut Natural) {
        let Some((&(p, k), rest)) = factors.split_first() else {
            *best = (*best).max(acc);
            return;
        };
        let mut v = acc;
        for _ in 0..=k {
            go(rest, v, limit, best);
            match v.checked_mul(p) {
                Some(next) if next <= limit => v = next,
                _ => break,
            }
        }
    }
    let mut best = 1;
    go(factors, 1, limit, &mut best);
    best
}

/// Both sides of `|A+A|² |A·A| ≥ |A|⁴ / (4⌈log |A|⌉)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolymosiReport {
    pub lhs: u128,
    /// Right-hand side with the natural log.
    pub rhs: Ratio<u128>,
    pub holds: bool,
    /// Right-hand side with `log₂`.
    pub rhs_base2: Ratio<u128>,
    pub holds_base2: bool,
}

/// `⌈ln n⌉` for `n ≥ 2`.
fn ceil_ln(n: u128) -> u128 {
    (n as f64).ln().ceil() as u128
}

/// `⌈log₂ n⌉` for `n ≥ 2`.
fn ceil_log2(n: u128) -> u128 {
    (128 - (n - 1).leading_zeros()) as u128
}

/// The inequality evaluated from the three set sizes.
pub fn solymosi_from_sizes(size: u128, sumset_size: u128, productset_size: u128) -> Result<SolymosiReport> {
    if size < 2 {
        return Err(Error::precondition("needs |A| ≥ 2"));
    }
    let of = || Error::overflow("Solymosi terms exceed 128 bits");
    let lhs = sumset_size
        .checked_mul(sumset_size)
        .and_then(|v| v.checked_mul(productset_size))
        .ok_or_else(of)?;
    let fourth = size
        .checked_mul(size)
        .and_then(|v| v.checked_mul(v))
        .ok_or_else(of)?;
    let side = |k: u128| -> Result<(Ratio<u128>, bool)> {
        let denom = 4 * k;
        let holds = lhs.checked_mul(denom).is_none_or(|l| l >= fourth);
        Ok((Ratio::new(fourth, denom), holds))
    };
    let (rhs, holds) = side(ceil_ln(size))?;
    let (rhs_base2, holds_base2) = side(ceil_log2(size))?;
    Ok(SolymosiReport {
        lhs,
        rhs,
        holds,
        rhs_base2,
        holds_base2,
    })
}

pub fn solymosi_check(a: &IntegerSet) -> Result<SolymosiReport> {
    if a.len() < 2 {
        return Err(Error::precondition("needs |A| ≥ 2"));
    }
    solymosi_from_sizes(
        a.len() as u128,
        sumset(a)?.len() as u128,
        productset(a)?.len() as u128,
    )
}

/// `|A|⁴ ≤ |A+A| · |T|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyReport {
    pub size_fourth: u128,
    pub rhs: u128,
    pub holds: bool,
}

pub fn cauchy_from_sizes(size: u128, sumset_size: u128, energy: u128) -> Result<CauchyReport> {
    let size_fourth = size
        .checked_mul(size)
        .and_then(|v| v.checked_mul(v))
        .ok_or_else(|| Error::overflow("|A|⁴"))?;
    let rhs = sumset_size
        .checked_mul(energy)
        .ok_or_else(|| Error::overflow("|A+A|·|T|"))?;
    Ok(CauchyReport {
        size_fourth,
        rhs,
        holds: size_fourth <= rhs,
    })
}

pub fn cauchy_bound_check(a: &IntegerSet) -> Result<CauchyReport> {
    cauchy_from_sizes(
        a.len() as u128,
        sumset(a)?.len() as u128,
        additive_energy(a)?.total,
    )
}

/// `|A+A| ≤ (|A|² + |A|)/2`.
pub fn trivial_sumset_bound(size: u128, sumset_size: u128) -> bool {
    2 * sumset_size <= size * size + size
}

pub fn trivial_sumset_bound_check(a: &IntegerSet) -> Result<bool> {
    Ok(trivial_sumset_bound(a.len() as u128, sumset(a)?.len() as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[Natural]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    fn oracle_energy(a: &[Natural]) -> u128 {
        let mut n = 0;
        for &m1 in a {
            for &m2 in a {
                for &m3 in a {
                    for &m4 in a {
                        if m1 + m2 == m3 + m4 {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    }

    fn oracle_distinct(a: &[Natural], op: fn(Natural, Natural) -> Natural) -> Vec<Natural> {
        let mut v: Vec<_> = a.iter().flat_map(|&x| a.iter().map(move |&y| op(x, y))).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&set(&[1, 2, 4, 8])).unwrap().len(), 10);
        assert_eq!(sumset(&set(&[1])).unwrap().elements(), &[2]);
        let s = sumset(&set(&[1, 2, 3, 4, 6, 8, 9])).unwrap();
        assert_eq!(s.elements(), (2..=18).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn productset_examples() {
        assert_eq!(
            productset(&set(&[1, 2, 4, 8])).unwrap().elements(),
            &[1, 2, 4, 8, 16, 32, 64]
        );
        assert_eq!(productset(&set(&[1])).unwrap().elements(), &[1]);
        assert_eq!(productset(&set(&[1, 2, 3, 4, 6, 8, 9])).unwrap().len(), 19);
    }

    #[test]
    fn energy_examples() {
        let c = additive_energy(&set(&[1, 2, 4, 8])).unwrap();
        assert_eq!((c.total, c.nontrivial), (28, 0));
        let c = additive_energy(&set(&[1])).unwrap();
        assert_eq!((c.total, c.trivial, c.nontrivial), (1, 1, 0));
        let c = additive_energy(&set(&[1, 2, 3])).unwrap();
        assert_eq!((c.total, c.trivial, c.nontrivial), (19, 15, 4));
    }

    #[test]
    fn sparse_paths_agree_with_oracle() {
        // wide range forces the sort-based paths
        let a = vec![1, 3, 1 << 40, (1 << 40) + 2, 1 << 60, 5 << 60];
        let s = set(&a);
        assert!(use_dense(&s, BITSET_CAP).is_none());
        assert_eq!(sumset(&s).unwrap().elements(), oracle_distinct(&a, |x, y| x + y).as_slice());
        assert_eq!(productset(&s).unwrap().elements(), oracle_distinct(&a, |x, y| x * y).as_slice());
        assert_eq!(additive_energy(&s).unwrap().total, oracle_energy(&a));
    }

    #[test]
    fn overflow_is_reported() {
        let s = set(&[1, 1 << 100]);
        assert!(matches!(productset(&s), Err(Error::Overflow(_))));
        let s = set(&[1, u128::MAX - 1]);
        assert!(matches!(sumset(&s), Err(Error::Overflow(_))));
    }

    #[test]
    fn invalid_sets_rejected() {
        assert!(IntegerSet::new(vec![]).is_err());
        assert!(IntegerSet::new(vec![2, 1]).is_err());
        assert!(IntegerSet::new(vec![0, 1]).is_err());
        assert_eq!(IntegerSet::from_unsorted(vec![3, 1, 3]).unwrap().elements(), &[1, 3]);
    }

    #[test]
    fn sandwich_examples() {
        let memo = PsiMemo::new();
        let r = sandwich_check(10.0, 2.0, &memo).unwrap();
        assert_eq!((r.lower, r.product, r.upper), (6, 7, 7));
        assert!(r.holds());
        let r = sandwich_check(13.0, 13.0, &memo).unwrap();
        assert!(r.holds());

        // x = 100, y = 7 against a direct scan of all three quantities
        let r = sandwich_check(100.0, 7.0, &memo).unwrap();
        let smooth7 = |n: u128| is_smooth_over(n, &[2, 3, 5, 7]);
        let a: Vec<u128> = (1..=100).filter(|&n| smooth7(n)).collect();
        assert_eq!(r.lower, (1..=10_000 / 7).filter(|&n| smooth7(n)).count() as u128);
        assert_eq!(r.upper, (1..=10_000).filter(|&n| smooth7(n)).count() as u128);
        assert_eq!(r.product, oracle_distinct(&a, |x, y| x * y).len() as u128);
        assert!(r.holds());
    }

    #[test]
    fn witness_examples() {
        let w = factor_witness(18, 10.0, 5.0).unwrap();
        assert_eq!((w.d, w.e, w.case), (9, 2, WitnessCase::LargeDivisor));
        let w = factor_witness(2, 10.0, 5.0).unwrap();
        assert_eq!((w.d, w.e, w.case), (2, 1, WitnessCase::Whole));
        assert!(matches!(factor_witness(35, 10.0, 5.0), Err(Error::Precondition(_))));
        assert!(matches!(factor_witness(32, 10.0, 5.0), Err(Error::Precondition(_))));
        assert_eq!(w.case.to_string(), "ii");
    }

    #[test]
    fn solymosi_examples() {
        let r = solymosi_check(&set(&[1, 2, 4, 8])).unwrap();
        assert_eq!(r.lhs, 700);
        assert_eq!(r.rhs, Ratio::new(256, 8));
        assert!(r.holds && r.holds_base2);
        let r = solymosi_check(&set(&[1, 2])).unwrap();
        assert_eq!(r.lhs, 27);
        assert_eq!(r.rhs, Ratio::from_integer(4));
        assert!(matches!(solymosi_check(&set(&[1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn cauchy_and_trivial_examples() {
        let r = cauchy_bound_check(&set(&[1, 2, 4, 8])).unwrap();
        assert_eq!((r.size_fourth, r.rhs, r.holds), (256, 280, true));
        let r = cauchy_bound_check(&set(&[1])).unwrap();
        assert_eq!((r.size_fourth, r.rhs), (1, 1));
        let r = cauchy_bound_check(&set(&[1, 2, 3])).unwrap();
        assert_eq!((r.size_fourth, r.rhs), (81, 95));
        assert!(trivial_sumset_bound_check(&set(&[1, 2, 4, 8])).unwrap());
        assert!(trivial_sumset_bound_check(&set(&[1, 2, 3])).unwrap());
        assert!(trivial_sumset_bound_check(&set(&[1])).unwrap());
        assert!(!trivial_sumset_bound(3, 7));
    }

    #[test]
    fn log_ceilings() {
        assert_eq!(ceil_ln(2), 1);
        assert_eq!(ceil_ln(7), 2);
        assert_eq!(ceil_ln(8), 3);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
    }

    #[test]
    fn blocks_cover_upper_triangle() {
        for n in [0usize, 1, 5, 3000] {
            let blocks = row_blocks(n);
            let rows: usize = blocks.iter().map(|(lo, hi)| hi - lo).sum();
            assert_eq!(rows, n);
            assert!(blocks.windows(2).all(|w| w[0].1 == w[1].0));
        }
    }

    proptest! {
        #[test]
        fn ops_match_oracles(raw in proptest::collection::vec(1u128..400, 1..24)) {
            let a = IntegerSet::from_unsorted(raw.clone()).unwrap();
            let e = a.elements();
            prop_assert_eq!(sumset(&a).unwrap().elements().to_vec(), oracle_distinct(e, |x, y| x + y));
            prop_assert_eq!(productset(&a).unwrap().elements().to_vec(), oracle_distinct(e, |x, y| x * y));
            let c = additive_energy(&a).unwrap();
            prop_assert_eq!(c.total, oracle_energy(e));
            prop_assert_eq!(c.total, c.trivial + c.nontrivial);

            // order of the raw input does not matter
            let mut rev = raw;
            rev.reverse();
            prop_assert_eq!(sumset(&IntegerSet::from_unsorted(rev).unwrap()).unwrap(), sumset(&a).unwrap());
        }

        #[test]
        fn lower_bounds_with_one(raw in proptest::collection::vec(2u128..10_000, 0..40)) {
            let mut v = raw;
            v.push(1);
            let a = IntegerSet::from_unsorted(v).unwrap();
            let n = a.len();
            prop_assert!(sumset(&a).unwrap().len() >= 2 * n - 1);
            prop_assert!(productset(&a).unwrap().len() >= n);
            prop_assert!(cauchy_bound_check(&a).unwrap().holds);
            prop_assert!(trivial_sumset_bound_check(&a).unwrap());
        }
    }
}
