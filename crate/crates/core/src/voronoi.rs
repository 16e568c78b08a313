//! Truncated oscillating-series expansion of `Δ(x)` and its remainder.
//!
//! `R₁(x; N) = (1/(√2·π))·x^{1/4}·Σ_{n≤N} d(n)·n^{-3/4}·cos(4π√(nx) − π/4)`
//! approximates `Δ(x)`; `R₂ = Δ − R₁` is what the truncation leaves behind.
//! The phase `4π√(nx)` reaches ~10¹⁰ for the supported range (x up to 1e9),
//! where plain f64 keeps no usable fraction bits, so `√(nx)` is formed in
//! double-double from the exact product and reduced mod 1 before the single
//! f64 cosine.

use crate::divisor::{delta_at, DivisorTable};
use crate::error::{Error, Result};
use crate::numeric::dd::{two_prod, Dd};
use crate::numeric::kahan::DdAcc;

/// Truncation length plus the divisor values backing it.
///
/// The expansion's length parameter is called `N` here; call sites that
/// couple it to an integration range `T` via `y = T^{1/4}` can use
/// [`crate::series::truncation_for`] — the two names alias the same thing.
#[derive(Clone, Copy)]
pub struct TruncationConfig<'a> {
    n: u64,
    table: &'a DivisorTable,
}

impl<'a> TruncationConfig<'a> {
    /// `n = 0` is the degenerate empty sum; otherwise `n ≤ table.limit()`.
    pub fn new(n: u64, table: &'a DivisorTable) -> Result<Self> {
        if n > table.limit() {
            return Err(Error::invalid(format!(
                "truncation N={n} exceeds table limit {}",
                table.limit()
            )));
        }
        Ok(TruncationConfig { n, table })
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// `cos(4π√(nx) − π/4)` with the argument reduced mod 2π in double-double.
#[inline]
pub fn cos_voronoi_phase(n: u64, x: f64) -> f64 {
    // 4π√(nx) − π/4 ≡ 2π·frac(2√(nx)) − π/4 (mod 2π)
    let (p, e) = two_prod(n as f64, x);
    let root = Dd { hi: p, lo: e }.sqrt();
    let f = root.mul_f64(2.0).fract();
    (2.0 * std::f64::consts::PI * f.to_f64() - std::f64::consts::FRAC_PI_4).cos()
}

/// Truncated expansion `R₁(x; N)`.
pub fn eval_r1(x: f64, cfg: &TruncationConfig) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::invalid(format!("eval_r1 requires x >= 1, got {x}")));
    }
    if cfg.n as f64 > x {
        return Err(Error::invalid(format!(
            "truncation N={} outside validity range N <= x = {x}",
            cfg.n
        )));
    }
    let mut acc = DdAcc::new();
    for n in 1..=cfg.n {
        let w = cfg.table.d(n) as f64 * (n as f64).powf(-0.75);
        acc.add(w * cos_voronoi_phase(n, x));
    }
    Ok(x.powf(0.25) / (std::f64::consts::SQRT_2 * std::f64::consts::PI) * acc.total())
}

/// Remainder `R₂(x; N) = Δ(x) − R₁(x; N)`.
pub fn eval_r2(x: f64, cfg: &TruncationConfig) -> Result<f64> {
    Ok(delta_at(x)?.delta - eval_r1(x, cfg)?)
}

/// Mean-square estimate of `R₂` over `[T, 2T]`.
#[derive(Clone, Copy, Debug)]
pub struct R2MeanSquare {
    pub t: f64,
    pub n: u64,
    pub n_samples: u64,
    /// Stratified-midpoint estimate of `∫_T^{2T} |R₂|² dx`.
    pub estimate: f64,
    /// `estimate / (T^{3/2}·N^{-1/2}·ln³T)`.
    pub normalized_ratio: f64,
}

/// Stratified midpoint estimate of `∫_T^{2T}|R₂|²`, one sample per stratum.
///
/// `n_samples ≥ 10³` is the recommended resolution; a single stratum is the
/// degenerate `|R₂(midpoint)|²·T`.
pub fn mean_square_r2(t: f64, cfg: &TruncationConfig, n_samples: u64) -> Result<R2MeanSquare> {
    if !(t >= 10.0) || !t.is_finite() {
        return Err(Error::invalid(format!("mean_square_r2 requires T >= 10, got {t}")));
    }
    if n_samples == 0 {
        return Err(Error::invalid("n_samples must be >= 1"));
    }
    let width = t / n_samples as f64;
    let mut acc = DdAcc::new();
    for i in 0..n_samples {
        let x = t + (i as f64 + 0.5) * width;
        let r2 = eval_r2(x, cfg)?;
        acc.add(r2 * r2);
    }
    let estimate = acc.total() * width;
    let denom = t.powf(1.5) * (cfg.n.max(1) as f64).powf(-0.5) * t.ln().powi(3);
    Ok(R2MeanSquare {
        t,
        n: cfg.n,
        n_samples,
        estimate,
        normalized_ratio: estimate / denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::summatory_d;
    use crate::hp::Scale;
    use crate::numeric::fit::log_log_slope;
    use crate::numeric::quadrature::GaussLegendre;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn empty_sum_is_zero() {
        let table = DivisorTable::build(10).unwrap();
        let cfg = TruncationConfig::new(0, &table).unwrap();
        assert_eq!(eval_r1(123.4, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn one_term_closed_form() {
        // N=1, x=π²: (1/(√2π))·π^{1/2}·cos(4π²−π/4)
        let table = DivisorTable::build(10).unwrap();
        let cfg = TruncationConfig::new(1, &table).unwrap();
        let x = PI * PI;
        let got = eval_r1(x, &cfg).unwrap();
        let want = x.powf(0.25) / (2f64.sqrt() * PI) * (4.0 * PI * x.sqrt() - PI / 4.0).cos();
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn matches_high_precision_oracle() {
        // N=10, x=100 against the scaled-integer phase route
        let table = DivisorTable::build(100).unwrap();
        let cfg = TruncationConfig::new(10, &table).unwrap();
        let x = 100.0;
        let scale = Scale::new(320);
        let mut oracle = 0.0f64;
        for n in 1..=10u64 {
            let w = table.d(n) as f64 * (n as f64).powf(-0.75);
            oracle += w * scale.cos_voronoi_phase(n, x);
        }
        oracle *= x.powf(0.25) / (2f64.sqrt() * PI);
        let got = eval_r1(x, &cfg).unwrap();
        assert!((got - oracle).abs() < 1e-10, "{got} vs {oracle}");
    }

    #[test]
    fn phase_reduction_survives_huge_arguments() {
        // n·x ~ 1e15: compare against the exact scaled-integer route
        let scale = Scale::new(320);
        for &(n, x) in &[(999_983u64, 1.0e9f64), (123_457, 9.87654e8), (2, 1.0e9)] {
            let fast = cos_voronoi_phase(n, x);
            let slow = scale.cos_voronoi_phase(n, x);
            assert!((fast - slow).abs() < 1e-9, "n={n} x={x}: {fast} vs {slow}");
        }
    }

    #[test]
    fn validity_range_enforced() {
        let table = DivisorTable::build(1000).unwrap();
        let cfg = TruncationConfig::new(1000, &table).unwrap();
        assert!(eval_r1(999.0, &cfg).is_err()); // N > x
        assert!(eval_r1(1000.0, &cfg).is_ok());
        assert!(TruncationConfig::new(2000, &table).is_err());
    }

    #[test]
    fn r2_is_deterministic() {
        let table = DivisorTable::build(100).unwrap();
        let cfg = TruncationConfig::new(100, &table).unwrap();
        let a = eval_r2(1.0e4, &cfg).unwrap();
        let b = eval_r2(1.0e4, &cfg).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn r2_inherits_integer_jump() {
        let table = DivisorTable::build(5000).unwrap();
        let cfg = TruncationConfig::new(64, &table).unwrap();
        for n in [1000u64, 3333, 4999] {
            let x = n as f64;
            let right = eval_r2(x, &cfg).unwrap();
            // left limit: D(n−1) in the Δ formula; R₁ is continuous
            let left = crate::divisor::delta_from_summatory(x, summatory_d(x - 0.5).unwrap())
                - eval_r1(x, &cfg).unwrap();
            let jump = right - left;
            assert!(
                (jump - table.d(n) as f64).abs() < 1e-7,
                "n={n}: jump {jump} vs d={}",
                table.d(n)
            );
        }
    }

    #[test]
    fn degenerate_single_stratum() {
        let table = DivisorTable::build(100).unwrap();
        let cfg = TruncationConfig::new(16, &table).unwrap();
        let t = 100.0;
        let ms = mean_square_r2(t, &cfg, 1).unwrap();
        let mid = eval_r2(1.5 * t, &cfg).unwrap();
        assert!((ms.estimate - mid * mid * t).abs() < 1e-9 * ms.estimate.abs().max(1.0));
    }

    #[test]
    fn mean_square_shrinks_at_full_truncation() {
        let table = DivisorTable::build(10_000).unwrap();
        let t = 1.0e4;
        let small = TruncationConfig::new(16, &table).unwrap();
        let full = TruncationConfig::new(10_000, &table).unwrap();
        let ms_small = mean_square_r2(t, &small, 400).unwrap().estimate;
        let ms_full = mean_square_r2(t, &full, 400).unwrap().estimate;
        assert!(
            ms_full < ms_small / 2.0,
            "full truncation did not collapse: {ms_full} vs {ms_small}"
        );
    }

    #[test]
    fn cosine_product_identity_h7() {
        // Πcos(aᵢ) = 2^{-6}·Σ_{sign patterns} cos(a₁ ± a₂ ± … ± a₇)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0005);
        for _ in 0..100 {
            let a: Vec<f64> = (0..7).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let product: f64 = a.iter().map(|&v| v.cos()).product();
            let mut sum = 0.0;
            for mask in 0..64u32 {
                let mut arg = a[0];
                for i in 0..6 {
                    arg += if mask >> i & 1 == 0 { a[i + 1] } else { -a[i + 1] };
                }
                sum += arg.cos();
            }
            sum /= 64.0;
            assert!((product - sum).abs() < 1e-12, "{product} vs {sum}");
        }
    }

    #[test]
    fn r1_derivative_matches_finite_differences() {
        // N=1: R₁ = (1/(√2π)) x^{1/4} cos(4π√x − π/4)
        let table = DivisorTable::build(10).unwrap();
        let cfg = TruncationConfig::new(1, &table).unwrap();
        for &x in &[50.0f64, 123.0, 777.0] {
            let h = 1e-3;
            let numeric =
                (eval_r1(x + h, &cfg).unwrap() - eval_r1(x - h, &cfg).unwrap()) / (2.0 * h);
            let theta = 4.0 * PI * x.sqrt() - PI / 4.0;
            let analytic = (0.25 * x.powf(-0.75) * theta.cos()
                - x.powf(0.25) * theta.sin() * 2.0 * PI / x.sqrt())
                / (2f64.sqrt() * PI);
            assert!(
                (numeric - analytic).abs() <= 1e-6 * analytic.abs().max(1.0),
                "x={x}: {numeric} vs {analytic}"
            );
        }
    }

    #[test]
    fn r1_mean_square_grows_like_sqrt_t() {
        // (1/T)∫_T^{2T} R₁² ~ T^{1/2} for fixed N; slope fit 0.5 ± 0.1
        let table = DivisorTable::build(100).unwrap();
        let cfg = TruncationConfig::new(16, &table).unwrap();
        let rule = GaussLegendre::<f64>::new(8).unwrap();
        let mut points = Vec::new();
        for &t in &[1.0e3f64, 1.0e4, 1.0e5] {
            let mut acc = DdAcc::new();
            // width (1/4)√(T/N) keeps ≤ π radians of the fastest difference
            // phase per panel
            let panels = (4.0 * (16.0 * t).sqrt()).ceil() as usize;
            let width = t / panels as f64;
            for i in 0..panels {
                let a = t + i as f64 * width;
                let v = rule.integrate(a, a + width, |x| {
                    let r1 = eval_r1(x, &cfg).unwrap();
                    r1 * r1
                });
                acc.add(v);
            }
            points.push((t, acc.total() / t));
        }
        let slope = log_log_slope(&points);
        assert!((slope - 0.5).abs() <= 0.1, "slope {slope} points {points:?}");
    }
}
