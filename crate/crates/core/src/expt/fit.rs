use serde::Serialize;

use super::sweep::ReportRow;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Sum,
    Product,
}

/// Least-squares line through `(log Ψ, log |op(A)|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub residual: f64,
    /// Rows that entered the fit.
    pub used: usize,
}

/// Fits the growth exponent of `|A+A|` or `|A·A|` against `Ψ` over complete rows.
pub fn fit_exponent(rows: &[ReportRow], which: Which) -> Result<Fit> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.is_complete())
        .filter_map(|r| {
            let psi = r.psi?;
            let size = match which {
                Which::Sum => r.sumset?,
                Which::Product => r.productset?,
            };
            (psi >= 2).then(|| ((psi as f64).ln(), (size as f64).ln()))
        })
        .collect();
    let n = points.len();
    if n < 2 {
        return Err(Error::precondition(format!("fit needs at least 2 usable rows, got {n}")));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::precondition("fit needs at least two distinct Ψ values"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(Fit {
        slope,
        intercept,
        residual: (sse / nf).sqrt(),
        used: n,
    })
}
