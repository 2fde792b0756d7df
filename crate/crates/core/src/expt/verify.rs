//! Named invariant suites, each over a fixed built-in grid.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics::{alpha_kappa, debruijn_log_psi, ennola_psi, shape};
use crate::error::{Error, Result};
use crate::exact;
use crate::psi::{powers_of_two_upto, psi_exact, PsiMemo};
use crate::setops::{
    additive_energy, cauchy_from_sizes, factor_witness, productset, sandwich_from_product,
    solymosi_from_sizes, sumset, trivial_quadruples, trivial_sumset_bound, IntegerSet,
    WitnessCase,
};
use crate::smooth::{enumerate_smooth, psi_bruteforce, smooth_upto, SmoothParams};
use crate::sunit::{census, evertse_consistent, fiber_bound_holds};

pub const SUITES: &[&str] = &[
    "psi-oracle",
    "psi-base2",
    "monotonicity",
    "sandwich",
    "witness",
    "energy",
    "inequalities",
    "alpha",
    "estimators",
    "census",
    "all",
];

pub const PSI_ORACLE_X: [f64; 4] = [1e3, 1e4, 1e5, 1e6];
pub const PSI_ORACLE_Y: [f64; 11] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 97.0];
pub const SET_GRID_X: [f64; 6] = [50.0, 100.0, 200.0, 500.0, 1000.0, 2000.0];
pub const SET_GRID_Y: [f64; 7] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0];

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifySummary {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifySummary {
    fn new(suite: &str) -> Self {
        VerifySummary {
            suite: suite.into(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, other: VerifySummary) {
        self.checks += other.checks;
        self.failures
            .extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.suite)));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {}: {} checks, {} failures",
            self.suite,
            self.checks,
            self.failures.len()
        )?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        Ok(())
    }
}

/// Runs a suite by name. Unknown names are a usage error.
pub fn verify(suite: &str, memo: &PsiMemo) -> Result<VerifySummary> {
    match suite {
        "psi-oracle" => psi_oracle(memo),
        "psi-base2" => psi_base2(memo),
        "monotonicity" => monotonicity(memo),
        "sandwich" => sandwich(memo),
        "witness" => witness(),
        "energy" => energy(),
        "inequalities" => inequalities(),
        "alpha" => alpha(),
        "estimators" => estimators(memo),
        "census" => census_suite(),
        "all" => {
            let mut all = VerifySummary::new("all");
            for name in SUITES.iter().filter(|s| **s != "all") {
                all.absorb(verify(name, memo)?);
            }
            Ok(all)
        }
        other => Err(Error::Usage(format!(
            "unknown suite {other:?}; known: {}",
            SUITES.join(", ")
        ))),
    }
}

fn grid_sets() -> Result<Vec<(f64, f64, IntegerSet)>> {
    let mut out = Vec::new();
    for &x in &SET_GRID_X {
        for &y in &SET_GRID_Y {
            let set = IntegerSet::from(enumerate_smooth(SmoothParams::new(x, y)?)?);
            out.push((x, y, set));
        }
    }
    Ok(out)
}

fn psi_oracle(memo: &PsiMemo) -> Result<VerifySummary> {
    let mut s = VerifySummary::new("psi-oracle");
    for &x in &PSI_ORACLE_X {
        for &y in &PSI_ORACLE_Y {
            let fast = psi_exact(SmoothParams::new(x, y)?, memo)?;
            let slow = psi_bruteforce(x, y)?;
            s.check(fast == slow, || format!("Ψ({x}, {y}): recurrence {fast} ≠ scan {slow}"));
        }
    }
    Ok(s)
}

fn psi_base2(memo: &PsiMemo) -> Result<VerifySummary> {
    let mut s = VerifySummary::new("psi-base2");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let x: u64 = rng.gen_range(2..=1_000_000_000_000);
        let v = psi_exact(SmoothParams::new(x as f64, 2.0)?, memo)?;
        let doubling = powers_of_two_upto(x as u128);
        let formula = 1 + ((x as f64).ln() / 2f64.ln()).floor() as u128;
        s.check(v == doubling && v == 1 + x.ilog2() as u128 && v == formula, || {
            format!("Ψ({x}, 2) = {v}, doubling {doubling}, formula {formula}")
        });
    }
    Ok(s)
}

fn monotonicity(memo: &PsiMemo) -> Result<VerifySummary> {
    let mut s = VerifySummary::new("monotonicity");
    for &y in &PSI_ORACLE_Y {
        let mut prev = 0;
        for k in 1..=60 {
            let x = 1.5f64.powi(k).max(y);
            let v = psi_exact(SmoothParams::new(x, y)?, memo)?;
            s.check(v >= prev, || format!("Ψ(x, {y}) decreased at x = {x}"));
            prev = v;
        }
    }
    for &x in &PSI_ORACLE_X {
        let mut prev = 0;
        for &y in &PSI_ORACLE_Y {
            let v = psi_exact(SmoothParams::new(x, y)?, memo)?;
            s.check(v >= prev, || format!("Ψ({x}, y) decreased at y = {y}"));
            prev = v;
        }
    }
    Ok(s)
}

fn sandwich(memo: &PsiMemo) -> Result<VerifySummary> {
    let mut s = VerifySummary::new("sandwich");
    for (x, y, set) in grid_sets()? {
        let product = productset(&set)?.len() as u128;
        let r = sandwich_from_product(x, y, product, memo)?;
        s.check(r.holds(), || {
            format!("x={x} y={y}: {} ≤ {} ≤ {} fails", r.lower, r.product, r.upper)
        });
    }
    Ok(s)
}

fn witness() -> Result<VerifySummary> {
    let mut s = VerifySummary::new("witness");
    for (x, y) in [(100.0, 7.0), (50.0, 5.0), (200.0, 13.0), (97.5, 3.5)] {
        let params = SmoothParams::new(x, y)?;
        let limit = params.floor_x()?;
        let basis = crate::primes_upto(y)?;
        let mut ns = smooth_upto(exact::floor_square_over(x, y)?, basis.primes());
        ns.sort_unstable();
        for n in ns {
            match factor_witness(n, x, y) {
                Ok(w) => s.check(
                    w.d * w.e == n
                        && w.d <= limit
                        && w.e <= limit
                        && crate::smooth::is_smooth_over(w.d, basis.primes())
                        && crate::smooth::is_smooth_over(w.e, basis.primes())
                        && matches!(w.case, WitnessCase::LargeDivisor | WitnessCase::Whole),
                    || format!("bad witness for {n} at x={x} y={y}: {w:?}"),
                ),
                Err(e) => s.check(false, || format!("no witness for {n} at x={x} y={y}: {e}")),
            }
        }
    }
    Ok(s)
}

fn energy() -> Result<VerifySummary> {
    let mut s = VerifySummary::new("energy");
    for (x, y, set) in grid_sets()? {
        let c = additive_energy(&set)?;
        let n = set.len() as u128;
        s.check(c.total == trivial_quadruples(n) + c.nontrivial, || {
            format!("x={x} y={y}: |T| = {} ≠ 2Ψ² − Ψ + {}", c.total, c.nontrivial)
        });
        if y == 2.0 {
            let sums = sumset(&set)?.len() as u128;
            s.check(c.nontrivial == 0 && sums == n * (n + 1) / 2, || {
                format!("x={x}: powers of two not Sidon ({} nontrivial, {sums} sums)", c.nontrivial)
            });
        }
    }
    Ok(s)
}

fn inequalities() -> Result<VerifySummary> {
    let mut s = VerifySummary::new("inequalities");
    for (x, y, set) in grid_sets()? {
        let n = set.len() as u128;
        let sums = sumset(&set)?.len() as u128;
        let prods = productset(&set)?.len() as u128;
        let t = additive_energy(&set)?.total;
        let c = cauchy_from_sizes(n, sums, t)?;
        s.check(c.holds, || format!("x={x} y={y}: Ψ⁴ = {} > {}", c.size_fourth, c.rhs));
        s.check(trivial_sumset_bound(n, sums), || {
            format!("x={x} y={y}: |A+A| = {sums} above (Ψ² + Ψ)/2")
        });
        if n >= 2 {
            let r = solymosi_from_sizes(n, sums, prods)?;
            s.check(r.holds, || format!("x={x} y={y}: {} < {}", r.lhs, r.rhs));
        }
    }
    Ok(s)
}

fn alpha() -> Result<VerifySummary> {
    let mut s = VerifySummary::new("alpha");
    for k in -20..=20 {
        let kappa = 2f64.powi(k);
        let a = alpha_kappa(kappa)?;
        let via_shape = 2.0 * shape(kappa / 2.0)? / shape(kappa)?;
        s.check((a - via_shape).abs() <= 1e-12, || format!("κ = 2^{k}: identity off by {}", a - via_shape));
        s.check(a > 1.0 && a < 2.0, || format!("κ = 2^{k}: α = {a} outside (1, 2)"));
    }
    let small = alpha_kappa(1e-6)?;
    let large = alpha_kappa(1e6)?;
    s.check(small < 1.05, || format!("α(1e-6) = {small}"));
    s.check(large > 1.89, || format!("α(1e6) = {large}"));
    Ok(s)
}

fn estimators(memo: &PsiMemo) -> Result<VerifySummary> {
    let mut s = VerifySummary::new("estimators");
    let (x, y) = (1e6f64, 3.0f64);
    let exact = psi_exact(SmoothParams::new(x, y)?, memo)? as f64;
    let ennola = ennola_psi(x, y)?;
    let budget = y * y / (x.ln() * y.ln());
    s.check((exact / ennola - 1.0).abs() <= budget, || {
        format!("Ennola at (1e6, 3): |{exact}/{ennola} − 1| > {budget}")
    });
    for &x in &PSI_ORACLE_X {
        for &y in &PSI_ORACLE_Y {
            let v = debruijn_log_psi(x, y)?;
            s.check(v.is_finite() && v > 0.0, || format!("de Bruijn at ({x}, {y}) = {v}"));
        }
    }
    Ok(s)
}

fn census_suite() -> Result<VerifySummary> {
    let mut s = VerifySummary::new("census");
    for &x in &SET_GRID_X {
        for &y in &SET_GRID_Y {
            let smooth = enumerate_smooth(SmoothParams::new(x, y)?)?;
            let c = census(&smooth)?;
            let set = IntegerSet::try_from(&smooth)?;
            let e = additive_energy(&set)?;
            s.check(c.total == e.total && c.nontrivial == e.nontrivial, || {
                format!("x={x} y={y}: census ({}, {}) vs energy ({}, {})", c.total, c.nontrivial, e.total, e.nontrivial)
            });
            s.check(fiber_bound_holds(&c, smooth.len()), || {
                format!("x={x} y={y}: fiber bound {} > {}·{}", c.nontrivial, c.distinct_triples, smooth.len())
            });
            s.check(evertse_consistent(&c, smooth.basis().count())?, || {
                format!("x={x} y={y}: {} triples above the Evertse bound", c.distinct_triples)
            });
        }
    }
    Ok(s)
}
