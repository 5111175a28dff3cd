//! Summatory functions over the square `1 ≤ m, n ≤ x` and the fit of their
//! lower-order terms.
//!
//! `Σ_{m,n≤x} N^(s)(m,n) = x²(A₁ log² x + A₂ log x + A₃) + O(x^{1+θ+ε})`
//! with `A₁ = ζ(2)/ζ(3)`. `A₂` and `A₃` have no published numeric value, so
//! they are only ever estimated here by least squares. `θ` is the divisor
//! problem exponent, known to satisfy
//! [`DIVISOR_EXPONENT_LOWER`]` ≤ θ ≤ `[`DIVISOR_EXPONENT_UPPER`]; the error
//! exponent cannot be resolved at the sizes computed here.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, ArithTable};
use crate::counting::{count_subrings, count_unital_subrings, h_prime_power};
use crate::error::{Error, Result};

/// Apéry's constant `ζ(3) = 1.2020569031595942853...`.
pub const ZETA3: f64 = 1.202_056_903_159_594;

pub const DIVISOR_EXPONENT_LOWER: f64 = 0.25;
pub const DIVISOR_EXPONENT_UPPER: f64 = 517.0 / 1648.0;

pub fn zeta2() -> f64 {
    PI * PI / 6.0
}

/// `A₁ = ζ(2)/ζ(3)`.
pub fn leading_constant() -> f64 {
    zeta2() / ZETA3
}

fn table_for(x: u64) -> Result<ArithTable> {
    let limit = u32::try_from(x).map_err(|_| Error::Overflow("summatory table size"))?;
    Ok(ArithTable::new(limit))
}

fn valuation(mut v: u32, p: u32) -> u32 {
    let mut e = 0;
    while v.is_multiple_of(p) {
        v /= p;
        e += 1;
    }
    e
}

/// `h(i, j)` from the sieve: only primes of `gcd(i, j)` contribute.
fn h_sieved(table: &ArithTable, i: u32, j: u32) -> Result<u64> {
    let g = gcd(u64::from(i), u64::from(j)) as u32;
    if g == 1 {
        return Ok(1);
    }
    table.prime_divisors(g).try_fold(1u64, |acc, p| {
        let local = h_prime_power(u64::from(p), valuation(i, p), valuation(j, p))?;
        acc.checked_mul(local).ok_or(Error::Overflow("h"))
    })
}

/// `Σ_{m,n≤x} N^(s)(m, n)`, computed as `Σ_{i,j≤x} h(i, j)⌊x/i⌋⌊x/j⌋`.
///
/// Rows of the `(i, j)` grid are summed on the current rayon pool.
pub fn partial_sum_subrings(x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::Zero { what: "x" });
    }
    let table = table_for(x)?;
    let x32 = x as u32;
    let total = (1..=x32)
        .into_par_iter()
        .map(|i| -> Result<u128> {
            let wi = u128::from(x32 / i);
            let mut row = 0u128;
            for j in i..=x32 {
                let weight = if j == i { 1 } else { 2 };
                let hv = u128::from(h_sieved(&table, i, j)?);
                row += weight * hv * u128::from(x32 / j);
            }
            Ok(row * wi)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    u64::try_from(total).map_err(|_| Error::Overflow("summatory total"))
}

/// The same sum by evaluating every `N^(s)(m, n)` separately.
pub fn partial_sum_subrings_naive(x: u64) -> Result<u64> {
    let mut total = 0u64;
    for m in 1..=x {
        for n in 1..=x {
            total = total
                .checked_add(count_subrings(m, n)?)
                .ok_or(Error::Overflow("naive summatory total"))?;
        }
    }
    Ok(total)
}

/// `Σ_{m,n≤x} τ(gcd(m, n)) = Σ_{d≤x} ⌊x/d⌋²`.
pub fn partial_sum_unital(x: u64) -> Result<u64> {
    (1..=x).try_fold(0u64, |acc, d| {
        let q = x / d;
        q.checked_mul(q)
            .and_then(|sq| acc.checked_add(sq))
            .ok_or(Error::Overflow("unital summatory total"))
    })
}

pub fn partial_sum_unital_naive(x: u64) -> Result<u64> {
    let mut total = 0u64;
    for m in 1..=x {
        for n in 1..=x {
            total += count_unital_subrings(m, n)?;
        }
    }
    Ok(total)
}

/// How the samples of a lower-order fit are weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitWeighting {
    /// Ordinary least squares on `S(x)` itself: residuals are measured in
    /// the units of the sum, so large `x` dominate.
    #[default]
    Absolute,
    /// Least squares on `S(x)/x²`: every sample counts equally.
    Normalized,
}

impl FitWeighting {
    pub fn name(&self) -> &'static str {
        match self {
            FitWeighting::Absolute => "absolute",
            FitWeighting::Normalized => "normalized",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [FitWeighting::Absolute, FitWeighting::Normalized]
            .into_iter()
            .find(|w| w.name() == name)
    }

    /// Weight of a sample at `x` in the normalized equation, scaled so the
    /// largest sample has weight 1.
    fn weight(&self, x: f64, x_max: f64) -> f64 {
        match self {
            FitWeighting::Absolute => (x / x_max).powi(4),
            FitWeighting::Normalized => 1.0,
        }
    }
}

/// Least-squares estimates of `A₂`, `A₃` with `A₁` held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerOrderFit {
    pub weighting: FitWeighting,
    pub a2: f64,
    pub a3: f64,
    /// Standard errors from the weighted residual variance (`k − 2`
    /// degrees of freedom for `k` samples).
    pub a2_stderr: f64,
    pub a3_stderr: f64,
}

/// Fits `S(x) ≈ x²(A₁ log² x + A₂ log x + A₃)` over `(x, S(x))` samples.
///
/// The fit is carried out on `y = S(x)/x² − A₁ log² x ≈ A₂ log x + A₃`;
/// [`FitWeighting::Absolute`] weights sample `x` by `x⁴`, which is the same
/// as fitting `S(x)` directly.
pub fn fit_lower_order(samples: &[(u64, u64)], weighting: FitWeighting) -> Result<LowerOrderFit> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    let a1 = leading_constant();
    let x_max = samples.iter().map(|s| s.0).max().unwrap_or(1) as f64;
    // (weight, log x, y)
    let points: Vec<(f64, f64, f64)> = samples
        .iter()
        .map(|&(x, s)| {
            let xf = x as f64;
            let l = xf.ln();
            (
                weighting.weight(xf, x_max),
                l,
                s as f64 / (xf * xf) - a1 * l * l,
            )
        })
        .collect();
    let sw: f64 = points.iter().map(|p| p.0).sum();
    let sl: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let sll: f64 = points.iter().map(|p| p.0 * p.1 * p.1).sum();
    let sy: f64 = points.iter().map(|p| p.0 * p.2).sum();
    let sly: f64 = points.iter().map(|p| p.0 * p.1 * p.2).sum();
    let det = sw * sll - sl * sl;
    let a2 = (sw * sly - sl * sy) / det;
    let a3 = (sll * sy - sl * sly) / det;
    let rss: f64 = points
        .iter()
        .map(|&(w, l, y)| w * (y - a2 * l - a3).powi(2))
        .sum();
    let sigma2 = rss / (points.len() as f64 - 2.0);
    Ok(LowerOrderFit {
        weighting,
        a2,
        a3,
        a2_stderr: (sigma2 * sw / det).sqrt(),
        a3_stderr: (sigma2 * sll / det).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub x: u64,
    pub exact_sum: u64,
    pub a1: f64,
    pub fitted_a2: f64,
    pub fitted_a3: f64,
    pub a2_stderr: f64,
    pub a3_stderr: f64,
    /// `S(x) − x²(A₁ log² x + A₂ log x + A₃)`.
    pub residual: f64,
    /// `residual / x²`.
    pub normalized_residual: f64,
}

impl AsymptoticReport {
    pub fn model(&self) -> f64 {
        let xf = self.x as f64;
        let l = xf.ln();
        xf * xf * (self.a1 * l * l + self.fitted_a2 * l + self.fitted_a3)
    }
}

/// Exact sums at every `x`, one shared fit of `A₂`, `A₃`, and residuals.
pub fn asymptotic_compare(xs: &[u64], weighting: FitWeighting) -> Result<Vec<AsymptoticReport>> {
    if xs.len() < 3 {
        return Err(Error::TooFewSamples(xs.len()));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedSamples);
    }
    let samples = xs
        .iter()
        .map(|&x| Ok((x, partial_sum_subrings(x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports_for(
        &samples,
        &fit_lower_order(&samples, weighting)?,
    ))
}

/// Residual reports for already computed samples under a given fit.
pub fn reports_for(samples: &[(u64, u64)], fit: &LowerOrderFit) -> Vec<AsymptoticReport> {
    let a1 = leading_constant();
    samples
        .iter()
        .map(|&(x, exact_sum)| {
            let mut report = AsymptoticReport {
                x,
                exact_sum,
                a1,
                fitted_a2: fit.a2,
                fitted_a3: fit.a3,
                a2_stderr: fit.a2_stderr,
                a3_stderr: fit.a3_stderr,
                residual: 0.0,
                normalized_residual: 0.0,
            };
            report.residual = exact_sum as f64 - report.model();
            report.normalized_residual = report.residual / (x as f64 * x as f64);
            report
        })
        .collect()
}
