use rayon::prelude::*;
use serde::Serialize;

use super::config::{Format, Grid, Guards, SweepConfig};
use crate::asymptotics::{predicted_exponents, regime_classify, RegimeSpec};
use crate::error::{Error, Result};
use crate::psi::{psi_count, PsiMemo};
use crate::setops::{
    additive_energy, cauchy_from_sizes, productset, sandwich_from_product, solymosi_from_sizes,
    sumset, trivial_sumset_bound, IntegerSet,
};
use crate::smooth::{enumerate_smooth, primes_upto, SmoothParams};

pub const STATUS_OK: &str = "ok";

/// One parameter point of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub y: f64,
    pub kappa: Option<f64>,
    pub a: Option<f64>,
}

impl Grid {
    pub fn points(&self) -> Vec<GridPoint> {
        match self {
            Grid::Points(v) => v
                .iter()
                .map(|&(x, y)| GridPoint { x, y, kappa: None, a: None })
                .collect(),
            Grid::Kappa { kappa, x } => x
                .iter()
                .map(|&x| GridPoint {
                    x,
                    y: kappa * x.ln(),
                    kappa: Some(*kappa),
                    a: None,
                })
                .collect(),
            Grid::Power { a, x } => x
                .iter()
                .map(|&x| GridPoint {
                    x,
                    y: x.ln().powf(*a),
                    kappa: None,
                    a: Some(*a),
                })
                .collect(),
        }
    }
}

/// One sweep observation. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub x: f64,
    /// Requested (real) `y`.
    pub y: f64,
    /// Largest prime `≤ y`.
    pub y_prime: Option<u64>,
    pub kappa: Option<f64>,
    pub a: Option<f64>,
    pub regime: Option<&'static str>,
    pub psi: Option<u128>,
    pub sumset: Option<u128>,
    pub productset: Option<u128>,
    pub energy_total: Option<u128>,
    pub energy_nontrivial: Option<u128>,
    pub sum_exponent: Option<f64>,
    pub product_exponent: Option<f64>,
    /// `Ψ(x²/y, y)`.
    pub psi_sandwich_low: Option<u128>,
    /// `Ψ(x², y)`.
    pub psi_sandwich_high: Option<u128>,
    pub sandwich_low: Option<f64>,
    pub sandwich_high: Option<f64>,
    pub predicted_sum: Option<f64>,
    pub predicted_sum_bound: &'static str,
    pub predicted_product: Option<f64>,
    pub predicted_product_bound: &'static str,
    pub sandwich_ok: Option<bool>,
    pub cauchy_ok: Option<bool>,
    pub trivial_bound_ok: Option<bool>,
    pub solymosi_ok: Option<bool>,
    pub status: String,
}

impl ReportRow {
    fn skeleton(p: &GridPoint) -> Self {
        ReportRow {
            x: p.x,
            y: p.y,
            y_prime: None,
            kappa: p.kappa,
            a: p.a,
            regime: None,
            psi: None,
            sumset: None,
            productset: None,
            energy_total: None,
            energy_nontrivial: None,
            sum_exponent: None,
            product_exponent: None,
            psi_sandwich_low: None,
            psi_sandwich_high: None,
            sandwich_low: None,
            sandwich_high: None,
            predicted_sum: None,
            predicted_sum_bound: "none",
            predicted_product: None,
            predicted_product_bound: "none",
            sandwich_ok: None,
            cauchy_ok: None,
            trivial_bound_ok: None,
            solymosi_ok: None,
            status: STATUS_OK.into(),
        }
    }

    fn skipped(p: &GridPoint, reason: String) -> Self {
        ReportRow {
            status: reason,
            ..Self::skeleton(p)
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status == STATUS_OK
    }

    /// Every check that ran passed.
    pub fn checks_pass(&self) -> bool {
        [self.sandwich_ok, self.cauchy_ok, self.trivial_bound_ok, self.solymosi_ok]
            .iter()
            .all(|c| c.unwrap_or(true))
    }

    /// The measured product exponent lies in the sandwich interval.
    pub fn product_exponent_in_sandwich(&self) -> Option<bool> {
        let (e, lo, hi) = (self.product_exponent?, self.sandwich_low?, self.sandwich_high?);
        Some(lo <= e && e <= hi)
    }
}

fn log_ratio(num: u128, psi: u128) -> Option<f64> {
    (psi >= 2).then(|| (num as f64).ln() / (psi as f64).ln())
}

fn guard_failure(what: &str, value: u128, limit: u128) -> String {
    format!("skipped: guard {what} {value} > {limit}")
}

/// Evaluates one grid point. Guard or domain failures become skipped rows.
pub fn evaluate_point(point: &GridPoint, config: &SweepConfig, memo: &PsiMemo) -> Result<ReportRow> {
    let params = match SmoothParams::new(point.x, point.y) {
        Ok(p) => p,
        Err(e) => return Ok(ReportRow::skipped(point, format!("skipped: domain {e}"))),
    };
    let Guards {
        max_floor_x,
        max_psi,
        max_pairs,
    } = config.guards;
    let floor_x = params.floor_x()?;
    if floor_x > max_floor_x {
        return Ok(ReportRow::skipped(point, guard_failure("floor_x", floor_x, max_floor_x)));
    }
    let basis = primes_upto(point.y)?;
    let psi = psi_count(floor_x, &basis, memo);
    if psi > max_psi {
        return Ok(ReportRow::skipped(point, guard_failure("psi", psi, max_psi)));
    }
    let pairs = psi * (psi + 1) / 2;
    if pairs > max_pairs {
        return Ok(ReportRow::skipped(point, guard_failure("pairs", pairs, max_pairs)));
    }
    let features = config.features;

    let mut row = ReportRow::skeleton(point);
    row.y_prime = basis.largest();
    row.psi = Some(psi);

    let spec = match (point.kappa, point.a) {
        (Some(kappa), _) => RegimeSpec::Kappa { kappa },
        (None, Some(a)) => RegimeSpec::Powerlog { a },
        (None, None) => regime_classify(point.x, point.y, config.band_constant, None)?,
    };
    row.regime = Some(spec.name());
    let prediction = predicted_exponents(&spec)?;
    row.predicted_sum = prediction.sum_exponent.value();
    row.predicted_sum_bound = prediction.sum_exponent.direction();
    row.predicted_product = prediction.product_exponent.value();
    row.predicted_product_bound = prediction.product_exponent.direction();

    let set = IntegerSet::from(enumerate_smooth(params)?);
    debug_assert_eq!(set.len() as u128, psi);

    let need_sum = features.sumset || features.checks;
    let need_prod = features.productset || features.sandwich || features.checks;
    let need_energy = features.energy || features.checks;

    let sum_size = need_sum.then(|| sumset(&set).map(|s| s.len() as u128)).transpose()?;
    let prod_size = need_prod.then(|| productset(&set).map(|s| s.len() as u128)).transpose()?;
    let energy = need_energy.then(|| additive_energy(&set)).transpose()?;

    if features.sumset {
        row.sumset = sum_size;
        row.sum_exponent = sum_size.and_then(|s| log_ratio(s, psi));
    }
    if features.productset {
        row.productset = prod_size;
        row.product_exponent = prod_size.and_then(|s| log_ratio(s, psi));
    }
    if features.energy {
        row.energy_total = energy.map(|e| e.total);
        row.energy_nontrivial = energy.map(|e| e.nontrivial);
    }
    if features.sandwich || features.checks {
        let product = prod_size.expect("computed above");
        let report = sandwich_from_product(point.x, point.y, product, memo)?;
        if features.sandwich {
            row.psi_sandwich_low = Some(report.lower);
            row.psi_sandwich_high = Some(report.upper);
            row.sandwich_low = log_ratio(report.lower, psi);
            row.sandwich_high = log_ratio(report.upper, psi);
        }
        if features.checks {
            row.sandwich_ok = Some(report.holds());
        }
    }
    if features.checks {
        let (s, p, e) = (
            sum_size.expect("computed above"),
            prod_size.expect("computed above"),
            energy.expect("computed above"),
        );
        row.cauchy_ok = Some(cauchy_from_sizes(psi, s, e.total)?.holds);
        row.trivial_bound_ok = Some(trivial_sumset_bound(psi, s));
        if psi >= 2 {
            row.solymosi_ok = Some(solymosi_from_sizes(psi, s, p)?.holds);
        }
    }
    Ok(row)
}

/// Runs every grid point, in parallel, returning rows in grid order.
pub fn sweep(config: &SweepConfig, memo: &PsiMemo) -> Result<Vec<ReportRow>> {
    config.validate()?;
    config
        .grid
        .points()
        .par_iter()
        .map(|p| evaluate_point(p, config, memo))
        .collect()
}

/// Serializes rows as CSV (header, comma, LF) or as a JSON array.
pub fn encode_rows(rows: &[ReportRow], format: Format) -> Result<Vec<u8>> {
    encode_records(rows, format)
}

/// [`encode_rows`] for any flat record type.
pub fn encode_records<T: Serialize>(rows: &[T], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| Error::Encode(e.to_string()))?;
            }
            if rows.is_empty() {
                return Ok(Vec::new());
            }
            w.into_inner().map_err(|e| Error::Encode(e.to_string()))
        }
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows).map_err(|e| Error::Encode(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}
