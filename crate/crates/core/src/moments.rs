//! Power moments `∫ Δ^k(x) dx` and `∫ |Δ(x)|^A dx` by piecewise quadrature,
//! with predicted main terms and growth-exponent fits.
//!
//! `Δ` is smooth between consecutive integers and jumps at them, so the
//! integral is summed per unit interval with a fixed Gauss–Legendre rule;
//! any global rule would stall at the jumps while the per-piece error decays
//! spectrally. Odd signed moments live off massive cancellation (the k = 7
//! integrand peaks ~10¹⁴ while the integral is ~10¹¹ at T = 10⁶), so every
//! reduction runs in double-double with a block-indexed tree: results do not
//! depend on the number of worker threads.

use rayon::prelude::*;

use crate::divisor::{delta_from_summatory, delta_stream};
use crate::divisor::DivisorTable;
use crate::error::{Error, Result};
use crate::numeric::dd::Dd;
use crate::numeric::fit::log_log_slope;
use crate::numeric::kahan::DdAcc;
use crate::numeric::quadrature::GaussLegendre;
use crate::series::coefficient_ck;

/// x-extent of one parallel integration block (aligned to absolute index).
const BLOCK_SPAN: u64 = 1 << 14;

/// One row of a moment comparison.
#[derive(Clone, Copy, Debug)]
pub struct MomentResult {
    pub power: f64,
    pub signed: bool,
    pub t0: f64,
    pub t1: f64,
    pub empirical: f64,
    /// Predicted main term, for signed k ∈ {1,2,3,4,7}.
    pub predicted: Option<f64>,
    pub ratio: Option<f64>,
    /// Fitted d ln|empirical| / d ln T over the requested grid.
    pub slope: Option<f64>,
}

fn validate_power(power: f64, signed: bool) -> Result<()> {
    if signed && power.fract() != 0.0 {
        return Err(Error::invalid(format!(
            "signed moments need an integer power, got {power}"
        )));
    }
    if !(power > 0.0) || power > 9.0 {
        return Err(Error::invalid(format!("power must be in (0, 9], got {power}")));
    }
    Ok(())
}

fn validate_range(t0: f64, t1: f64) -> Result<()> {
    if !(t0 >= 1.0) || !t1.is_finite() || t1 < t0 {
        return Err(Error::invalid(format!(
            "integration range requires 1 <= T0 <= T1, got ({t0}, {t1})"
        )));
    }
    Ok(())
}

#[inline]
fn powered(delta: f64, power: f64, signed: bool) -> f64 {
    if signed {
        delta.powi(power as i32)
    } else {
        delta.abs().powf(power)
    }
}

/// `∫_{t0}^{t1} Δ^power` (signed) or `∫ |Δ|^power`, one pass per call.
pub fn moment_integral(
    power: f64,
    signed: bool,
    t0: f64,
    t1: f64,
    quad_order: usize,
) -> Result<f64> {
    Ok(moment_integral_multi(&[(power, signed)], t0, t1, quad_order)?[0])
}

/// Several powers in one sweep over the same `Δ` evaluations.
///
/// The range splits into blocks aligned to multiples of `BLOCK_SPAN`; blocks
/// integrate independently (each starts from one hyperbola evaluation and
/// sieves forward) and reduce in block order.
pub fn moment_integral_multi(
    powers: &[(f64, bool)],
    t0: f64,
    t1: f64,
    quad_order: usize,
) -> Result<Vec<f64>> {
    for &(p, s) in powers {
        validate_power(p, s)?;
    }
    validate_range(t0, t1)?;
    if !(2..=16).contains(&quad_order) {
        return Err(Error::invalid(format!(
            "quad_order must be in 2..=16, got {quad_order}"
        )));
    }
    if t0 == t1 {
        return Ok(vec![0.0; powers.len()]);
    }
    let rule = GaussLegendre::<f64>::new(quad_order)?;

    // block boundaries at multiples of BLOCK_SPAN, clipped to [t0, t1]
    let first_block = (t0 as u64) / BLOCK_SPAN;
    let last_block = ((t1.ceil() as u64).max(1) - 1) / BLOCK_SPAN;
    let blocks: Vec<u64> = (first_block..=last_block).collect();
    let partials: Vec<Vec<Dd>> = blocks
        .par_iter()
        .map(|&b| {
            let lo = t0.max((b * BLOCK_SPAN) as f64);
            let hi = t1.min(((b + 1) * BLOCK_SPAN) as f64);
            let mut accs = vec![DdAcc::new(); powers.len()];
            if lo < hi {
                for piece in delta_stream(lo, hi, 1 << 16).expect("validated range") {
                    for (x, w) in rule.scaled(piece.lo, piece.hi) {
                        let delta = delta_from_summatory(x, piece.summatory);
                        for (acc, &(p, s)) in accs.iter_mut().zip(powers) {
                            acc.add(w * powered(delta, p, s));
                        }
                    }
                }
            }
            accs.iter().map(|a| a.total_dd()).collect()
        })
        .collect();

    let mut totals = vec![DdAcc::new(); powers.len()];
    for block in &partials {
        for (acc, &v) in totals.iter_mut().zip(block) {
            acc.add_dd(v);
        }
    }
    Ok(totals.iter().map(|a| a.total()).collect())
}

/// Predicted main term of `∫_2^T Δ^k` for k ∈ {1, 2, 3, 4, 7}.
///
/// k = 1 is `T/4`; the rest are `C_k(y)·T^{1+k/4}` with the truncated
/// singular-series coefficients.
pub fn main_term(table: &DivisorTable, k: u8, t: f64, y: u64) -> Result<f64> {
    match k {
        1 => Ok(t / 4.0),
        2 | 3 | 4 | 7 => Ok(coefficient_ck(table, k, y)? * t.powf(1.0 + k as f64 / 4.0)),
        other => Err(Error::invalid(format!(
            "no main term for k={other} (supported: 1, 2, 3, 4, 7)"
        ))),
    }
}

/// Empirical-vs-predicted rows over an increasing T grid, one sieve sweep.
pub fn moment_report(
    table: &DivisorTable,
    power: f64,
    signed: bool,
    t_grid: &[f64],
    y: u64,
    quad_order: usize,
) -> Result<Vec<MomentResult>> {
    if t_grid.is_empty() {
        return Err(Error::invalid("empty T grid"));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("T grid must be strictly increasing"));
    }
    let t0 = 2.0f64;
    if t_grid[0] <= t0 {
        return Err(Error::invalid("T grid must start above 2"));
    }
    // cumulative integrals via per-segment sweeps
    let mut empirical = Vec::with_capacity(t_grid.len());
    let mut cum = DdAcc::new();
    let mut prev = t0;
    for &t in t_grid {
        let segment = moment_integral_multi(&[(power, signed)], prev, t, quad_order)?[0];
        cum.add(segment);
        empirical.push(cum.total());
        prev = t;
    }

    let k = power as u8;
    let has_prediction = signed && power.fract() == 0.0 && matches!(k, 1 | 2 | 3 | 4 | 7);
    let slope = if t_grid.len() >= 2 {
        let pts: Vec<(f64, f64)> = t_grid.iter().copied().zip(empirical.iter().copied()).collect();
        Some(log_log_slope(&pts))
    } else {
        None
    };

    let mut out = Vec::with_capacity(t_grid.len());
    for (&t, &emp) in t_grid.iter().zip(&empirical) {
        let predicted = if has_prediction {
            Some(main_term(table, k, t, y)?)
        } else {
            None
        };
        let ratio = predicted.map(|p| emp / p);
        out.push(MomentResult {
            power,
            signed,
            t0,
            t1: t,
            empirical: emp,
            predicted,
            ratio,
            slope,
        });
    }
    Ok(out)
}

/// Closed-form check of `∫_T^{2T} cos(A√t + B) dt ≪ √T/|A|`.
///
/// Substituting u = √t turns the integral into `2∫ u·cos(Au+B) du` with the
/// elementary antiderivative `2(cos(Au+B)/A² + u·sin(Au+B)/A)`; returns
/// `|integral|·|A|/√T`.
pub fn oscillatory_check(a: f64, b: f64, t: f64) -> Result<f64> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::invalid("oscillatory_check requires A != 0"));
    }
    if !(t >= 10.0) {
        return Err(Error::invalid(format!("oscillatory_check requires T >= 10, got {t}")));
    }
    let anti = |u: f64| 2.0 * ((a * u + b).cos() / (a * a) + u * (a * u + b).sin() / a);
    let integral = anti((2.0 * t).sqrt()) - anti(t.sqrt());
    Ok(integral.abs() * a.abs() / t.sqrt())
}
