//! Closed-form size estimates for smooth-number sets and their sum/product sets.
//!
//! Everything here is floating point and generic over [`num_traits::Float`];
//! the crate root re-exports `f64` aliases. Logs are natural throughout.
//!
//! The shape function is
//!
//! ```text
//! G(t) = log(1 + t) + t·log(1 + 1/t)        (t > 0)
//! ```
//!
//! and `log Ψ(x, y) ≈ (log x / log y)·G(y / log x)` (de Bruijn). For very small
//! `y` the Ennola main term `(1/π(y)!)·∏_{p ≤ y} log x / log p` is sharper.

use std::fmt;

use num_traits::{Float, FloatConst};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::smooth::primes_upto;

/// Default classifier constant separating the small-`y` band from the κ regime.
pub const DEFAULT_BAND_CONSTANT: f64 = 0.25;

/// Fitted `A = log y / log log x` at or above which a point counts as very large.
pub const VERYLARGE_CUTOFF: f64 = 3.0;

fn lit<F: Float>(v: f64) -> F {
    F::from(v).expect("float literal")
}

fn positive<F: Float + fmt::Display>(name: &str, t: F) -> Result<()> {
    if t > F::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {t} must be positive and finite")))
    }
}

/// `G(t) = log(1 + t) + t·log(1 + 1/t)`.
pub fn shape<F: Float + fmt::Display>(t: F) -> Result<F> {
    positive("t", t)?;
    Ok(t.ln_1p() + t * t.recip().ln_1p())
}

/// Which crude approximation of `G` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrudeRegime {
    /// `t ≥ 2`: `G(t) ≈ log t`.
    Large,
    /// `t ≤ 1/2`: `G(t) ≈ t·log(1/t)`.
    Small,
    /// `1/2 < t < 2`: neither form is stated.
    None,
}

/// The leading-order form of `G(t)` and the range it belongs to.
///
/// In the gap `(1/2, 2)` the value returned is `G(t)` itself.
pub fn shape_crude<F: Float + fmt::Display>(t: F) -> Result<(F, CrudeRegime)> {
    positive("t", t)?;
    if t >= lit(2.0) {
        Ok((t.ln(), CrudeRegime::Large))
    } else if t <= lit(0.5) {
        Ok((t * t.recip().ln(), CrudeRegime::Small))
    } else {
        Ok((shape(t)?, CrudeRegime::None))
    }
}

fn check_xy<F: Float + fmt::Display>(x: F, y: F) -> Result<()> {
    if !(x.is_finite() && y.is_finite() && y >= lit(2.0) && x >= y) {
        return Err(Error::domain(format!("need x ≥ y ≥ 2, got x = {x}, y = {y}")));
    }
    Ok(())
}

/// Main term `(log x / log y)·G(y / log x)` of `log Ψ(x, y)`.
pub fn debruijn_log_psi<F: Float + fmt::Display>(x: F, y: F) -> Result<F> {
    check_xy(x, y)?;
    let lx = x.ln();
    Ok(lx / y.ln() * shape(y / lx)?)
}

/// Upper end `√(log x · log log x)` of the Ennola band, if the band is nonempty.
pub fn ennola_band_limit<F: Float>(x: F) -> Option<F> {
    let lx = x.ln();
    let llx = lx.ln();
    let v = (lx * llx).sqrt();
    (llx > F::zero() && v >= lit(2.0)).then_some(v)
}

/// Main term `(1/π(y)!)·∏_{p ≤ y} log x / log p` of `Ψ(x, y)`.
///
/// Refuses points outside `2 ≤ y ≤ √(log x · log log x)`.
pub fn ennola_psi<F: Float + fmt::Display>(x: F, y: F) -> Result<F> {
    check_xy(x, y)?;
    let band = "2 ≤ y ≤ √(log x · log log x)";
    let limit = ennola_band_limit(x).ok_or_else(|| Error::Validity {
        band: band.into(),
        detail: format!("empty for x = {x}"),
    })?;
    if y > limit {
        return Err(Error::Validity {
            band: band.into(),
            detail: format!("y = {y} > {limit}"),
        });
    }
    let basis = primes_upto(y.to_f64().expect("finite"))?;
    let lx = x.ln();
    let factorial: u128 = (1..=basis.count() as u128).product();
    let product = basis
        .primes()
        .iter()
        .fold(F::one(), |acc, &p| acc * lx / lit::<F>(p as f64).ln());
    Ok(product / F::from(factorial).expect("factorial fits the float range"))
}

/// `α_κ = (2 log(1 + κ/2) + κ log(1 + 2/κ)) / (log(1 + κ) + κ log(1 + 1/κ))`.
pub fn alpha_kappa<F: Float + fmt::Display>(kappa: F) -> Result<F> {
    positive("κ", kappa)?;
    let two = lit::<F>(2.0);
    let half = kappa / two;
    let num = two * half.ln_1p() + kappa * (two / kappa).ln_1p();
    let den = kappa.ln_1p() + kappa * kappa.recip().ln_1p();
    Ok(num / den)
}

/// `(log x / log y)·log(y / log x)`, valid for `y > log x`.
pub fn can_of_pens_log_psi<F: Float + fmt::Display>(x: F, y: F) -> Result<F> {
    check_xy(x, y)?;
    let lx = x.ln();
    if y <= lx {
        return Err(Error::Validity {
            band: "y > log x".into(),
            detail: format!("y = {y} ≤ log x = {lx}"),
        });
    }
    Ok(lx / y.ln() * (y / lx).ln())
}

/// Which asymptotic family a parameter point is assigned to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RegimeSpec<F> {
    /// `y = o(log x)`.
    TinyY,
    /// `2 ≤ y ≤ c·log x`.
    Theorem1Band { c: F },
    /// `y = κ·log x`.
    Kappa { kappa: F },
    /// `y ≍ (log x)^A`.
    Powerlog { a: F },
    /// `y / log x → ∞`.
    Large,
    /// `log y / log log x → ∞`.
    Verylarge,
}

impl<F: Float + fmt::Display> RegimeSpec<F> {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeSpec::TinyY => "tiny-y",
            RegimeSpec::Theorem1Band { .. } => "theorem1-band",
            RegimeSpec::Kappa { .. } => "kappa",
            RegimeSpec::Powerlog { .. } => "powerlog",
            RegimeSpec::Large => "large",
            RegimeSpec::Verylarge => "verylarge",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RegimeSpec::Theorem1Band { c } => positive("c", c),
            RegimeSpec::Kappa { kappa } => positive("κ", kappa),
            RegimeSpec::Powerlog { a } if !(a > F::one()) => {
                Err(Error::domain(format!("A = {a} must exceed 1")))
            }
            _ => Ok(()),
        }
    }
}

/// Assigns a single point to a regime by fixed cutoffs.
///
/// * `y ≤ c·log x` → theorem1-band
/// * `c·log x < y ≤ (log x)²` → kappa with `κ = y / log x`
/// * otherwise `A = log y / log log x` (or `a_hint`): powerlog below
///   [`VERYLARGE_CUTOFF`], verylarge from it on.
pub fn regime_classify<F: Float + fmt::Display>(x: F, y: F, c: F, a_hint: Option<F>) -> Result<RegimeSpec<F>> {
    check_xy(x, y)?;
    positive("c", c)?;
    let lx = x.ln();
    if y <= c * lx {
        return Ok(RegimeSpec::Theorem1Band { c });
    }
    if y <= lx * lx {
        return Ok(RegimeSpec::Kappa { kappa: y / lx });
    }
    let a = a_hint.unwrap_or_else(|| y.ln() / lx.ln());
    if a >= lit(VERYLARGE_CUTOFF) {
        Ok(RegimeSpec::Verylarge)
    } else {
        Ok(RegimeSpec::Powerlog { a })
    }
}

/// A predicted exponent `e` in `|op(A)| = Ψ^{e + o(1)}`, or a one-sided bound on it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "bound", content = "value", rename_all = "lowercase")]
pub enum Exponent<F> {
    Equal(F),
    Lower(F),
    Upper(F),
    None,
}

impl<F: Copy> Exponent<F> {
    pub fn value(&self) -> Option<F> {
        match *self {
            Exponent::Equal(v) | Exponent::Lower(v) | Exponent::Upper(v) => Some(v),
            Exponent::None => None,
        }
    }

    pub fn direction(&self) -> &'static str {
        match self {
            Exponent::Equal(_) => "equal",
            Exponent::Lower(_) => "lower",
            Exponent::Upper(_) => "upper",
            Exponent::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentPrediction<F> {
    pub sum_exponent: Exponent<F>,
    pub product_exponent: Exponent<F>,
    /// Regime the prediction comes from.
    pub source: &'static str,
}

pub fn predicted_exponents<F: Float + fmt::Display>(spec: &RegimeSpec<F>) -> Result<ExponentPrediction<F>> {
    spec.validate()?;
    let one = F::one();
    let two = lit::<F>(2.0);
    let (sum_exponent, product_exponent) = match *spec {
        RegimeSpec::TinyY => (Exponent::Equal(two), Exponent::Equal(one)),
        RegimeSpec::Theorem1Band { .. } => (Exponent::Equal(two), Exponent::None),
        RegimeSpec::Kappa { kappa } => {
            let alpha = alpha_kappa(kappa)?;
            (
                Exponent::Lower((lit::<F>(4.0) - alpha) / two),
                Exponent::Equal(alpha),
            )
        }
        RegimeSpec::Powerlog { a } if a > two => (Exponent::Upper(a / (a - one)), Exponent::None),
        RegimeSpec::Powerlog { .. } => (Exponent::None, Exponent::None),
        RegimeSpec::Large => (Exponent::None, Exponent::Equal(two)),
        RegimeSpec::Verylarge => (Exponent::Equal(one), Exponent::Equal(two)),
    };
    Ok(ExponentPrediction {
        sum_exponent,
        product_exponent,
        source: spec.name(),
    })
}

/// Exact count against the two estimators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimateReport<F> {
    pub exact_log_psi: Option<F>,
    pub debruijn_log_psi: F,
    pub debruijn_rel_error: Option<F>,
    pub ennola_psi: Option<F>,
    pub ennola_rel_error: Option<F>,
    /// `y² / (log x · log y)`, present with the Ennola term.
    pub ennola_budget: Option<F>,
}

/// Compares the estimators with an exact `Ψ` when one is available.
pub fn estimate_report<F: Float + FloatConst + fmt::Display>(
    x: F,
    y: F,
    exact_psi: Option<u128>,
) -> Result<EstimateReport<F>> {
    let db = debruijn_log_psi(x, y)?;
    let exact = exact_psi.map(|v| F::from(v).expect("count fits the float range"));
    let exact_log = exact.map(|v| v.ln());
    let ennola = ennola_psi(x, y).ok();
    let rel = |est: F, truth: F| ((est - truth) / truth).abs();
    Ok(EstimateReport {
        exact_log_psi: exact_log,
        debruijn_log_psi: db,
        debruijn_rel_error: exact_log.filter(|v| *v > F::zero()).map(|v| rel(db, v)),
        ennola_psi: ennola,
        ennola_rel_error: ennola.zip(exact).map(|(e, v)| (v / e - F::one()).abs()),
        ennola_budget: ennola.map(|_| y * y / (x.ln() * y.ln())),
    })
}
