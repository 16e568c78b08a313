//! The exponential sum `S(x;N) = Σ_{N<n≤2N} e(x√n)`, panel quadrature of its
//! power moments, and a compactly supported smooth bump with an explicit
//! Fourier transform.
//!
//! The bump is the classical box-convolution construction: the indicator of
//! `[−a, a]` convolved with the k-fold self-convolution of a centered box of
//! width `2δ/k`. Its transform is the closed product
//! `Φ(x) = (sin(2πax)/(πx))·(sin(2πδx/k)/(2πδx/k))^k`, which makes the
//! three-way envelope `min(2a, 1/(π|x|), (1/(π|x|))(k/(2π|x|δ))^k)` checkable
//! pointwise with no quadrature error. `φ` itself evaluates through the
//! Irwin–Hall piecewise polynomial for small k and through the inverse
//! transform otherwise.

use crate::error::{Error, Result};
use crate::numeric::dd::{sqrt_u64, Dd};
use crate::numeric::kahan::{DdAcc, Neumaier};
use crate::numeric::quadrature::GaussLegendre;

/// Value of the exponential sum at one x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SValue {
    pub re: f64,
    pub im: f64,
}

impl SValue {
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Precomputed `√n` for `n ∼ N`, reused across quadrature nodes.
pub struct SEvaluator {
    roots: Vec<Dd>,
    n: u64,
}

impl SEvaluator {
    pub fn new(n: u64) -> Self {
        let roots = (n + 1..=2 * n).map(sqrt_u64).collect();
        SEvaluator { roots, n }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `Σ_{n∼N} e(x√n)` with the phase `x√n` reduced mod 1 in double-double.
    pub fn eval(&self, x: f64) -> SValue {
        let mut re = Neumaier::new();
        let mut im = Neumaier::new();
        for root in &self.roots {
            let f = root.mul_f64(x).fract().to_f64();
            let (s, c) = (2.0 * std::f64::consts::PI * f).sin_cos();
            re.add(c);
            im.add(s);
        }
        SValue { re: re.total(), im: im.total() }
    }
}

/// One-off evaluation of `S(x;N)`.
pub fn eval_s(x: f64, n: u64) -> SValue {
    SEvaluator::new(n).eval(x)
}

/// Integral next to its envelope.
#[derive(Clone, Copy, Debug)]
pub struct SMomentReport {
    pub n: u64,
    pub u_lo: f64,
    pub u_hi: f64,
    pub integral: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Panel width resolving the fastest phase `2π√(2N)` to ~π/2 per panel.
fn panel_width(n: u64) -> f64 {
    (0.1f64).min(1.0 / (4.0 * (2.0 * n as f64).sqrt()))
}

fn integrate_power(eval: &SEvaluator, power: i32, lo: f64, hi: f64) -> f64 {
    let rule = GaussLegendre::<f64>::new(12).expect("static order");
    let width = panel_width(eval.n());
    let panels = ((hi - lo) / width).ceil() as usize;
    let mut acc = DdAcc::new();
    for i in 0..panels {
        let a = lo + (hi - lo) * i as f64 / panels as f64;
        let b = lo + (hi - lo) * (i + 1) as f64 / panels as f64;
        let v = rule.integrate(a, b, |x| {
            let s = eval.eval(x).abs();
            match power {
                2 => s * s,
                7 => s.powi(7),
                p => s.powi(p),
            }
        });
        acc.add(v);
    }
    acc.total()
}

/// `∫_0^{√N} |S(x;N)|² dx` against `N^{3/2}·ln N`.
pub fn mean_square_s(n: u64) -> Result<SMomentReport> {
    if n < 16 {
        return Err(Error::invalid(format!("mean_square_s requires N >= 16, got {n}")));
    }
    let eval = SEvaluator::new(n);
    let k0 = (n as f64).sqrt();
    let integral = integrate_power(&eval, 2, 0.0, k0);
    let bound = (n as f64).powf(1.5) * (n as f64).ln();
    Ok(SMomentReport {
        n,
        u_lo: 0.0,
        u_hi: k0,
        integral,
        bound,
        ratio: integral / bound,
    })
}

/// `∫_U^{2U} |S(x;N)|⁷ dx` against `N^{13/2} + U·N⁵`.
pub fn seventh_moment_s(n: u64, u: f64) -> Result<SMomentReport> {
    if n < 16 {
        return Err(Error::invalid(format!("seventh_moment_s requires N >= 16, got {n}")));
    }
    if !(u >= (n as f64).sqrt()) {
        return Err(Error::invalid(format!(
            "seventh_moment_s requires U >= √N, got U={u}, N={n}"
        )));
    }
    let eval = SEvaluator::new(n);
    let integral = integrate_power(&eval, 7, u, 2.0 * u);
    let nf = n as f64;
    let bound = nf.powf(6.5) + u * nf.powi(5);
    Ok(SMomentReport {
        n,
        u_lo: u,
        u_hi: 2.0 * u,
        integral,
        bound,
        ratio: integral / bound,
    })
}

/// Parameters of the compact bump: flat on `[−(a−δ), a−δ]`, supported on
/// `[−(a+δ), a+δ]`, built from k box convolutions.
#[derive(Clone, Copy, Debug)]
pub struct BumpConfig {
    pub a: f64,
    pub delta: f64,
    pub k: u32,
}

impl BumpConfig {
    pub fn new(a: f64, delta: f64, k: u32) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::invalid(format!("bump requires a > 0, got {a}")));
        }
        if !(delta > 0.0 && delta < a / 4.0) {
            return Err(Error::invalid(format!(
                "bump requires 0 < δ < a/4, got δ={delta}, a={a}"
            )));
        }
        if k == 0 {
            return Err(Error::invalid("smoothness order k must be >= 1"));
        }
        Ok(BumpConfig { a, delta, k })
    }
}

/// The bump and its transform.
#[derive(Clone, Copy, Debug)]
pub struct Bump {
    pub config: BumpConfig,
}

/// Largest k for which the alternating Irwin–Hall sum stays accurate in f64.
const IRWIN_HALL_MAX_K: u32 = 12;

fn binomial(n: u32, j: u32) -> f64 {
    let mut v = 1.0f64;
    for i in 0..j {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// CDF of the sum of k iid uniforms on [0, 1] at s (Irwin–Hall).
fn irwin_hall_cdf(s: f64, k: u32) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= k as f64 {
        return 1.0;
    }
    let mut fact = 1.0f64;
    for i in 1..=k {
        fact *= i as f64;
    }
    let mut sum = 0.0f64;
    for j in 0..=(s.floor() as u32) {
        let term = binomial(k, j) * (s - j as f64).powi(k as i32);
        sum += if j % 2 == 0 { term } else { -term };
    }
    sum / fact
}

impl Bump {
    /// CDF of the k-fold box convolution (support `[−δ, δ]`) at t.
    fn smoother_cdf(&self, t: f64) -> f64 {
        let BumpConfig { delta, k, .. } = self.config;
        let s = (t + delta) * k as f64 / (2.0 * delta);
        irwin_hall_cdf(s, k)
    }

    /// `φ(y)`: 1 on the plateau, 0 outside the support, strictly between on
    /// the shoulders.
    pub fn phi(&self, y: f64) -> f64 {
        if self.config.k <= IRWIN_HALL_MAX_K {
            self.smoother_cdf(y + self.config.a) - self.smoother_cdf(y - self.config.a)
        } else {
            self.phi_numeric(y)
        }
    }

    /// Inverse-transform evaluation `∫ e(xy)Φ(x) dx`, used above the stable
    /// Irwin–Hall range.
    pub fn phi_numeric(&self, y: f64) -> f64 {
        // Φ decays below 1e-14·2a soon after k/(2πδ); integrate to there
        let BumpConfig { a, delta, k } = self.config;
        let mut x_max = k as f64 / (2.0 * std::f64::consts::PI * delta);
        while self.bound(x_max) > 1e-15 * 2.0 * a {
            x_max *= 1.25;
        }
        let rule = GaussLegendre::<f64>::new(16).expect("static order");
        // panels short enough for both the transform's own oscillation and
        // the e(xy) factor
        let width = (0.25 / (a + delta)).min(0.25 / y.abs().max(1e-9));
        let panels = (x_max / width).ceil() as usize;
        let mut acc = DdAcc::new();
        for i in 0..panels {
            let lo = x_max * i as f64 / panels as f64;
            let hi = x_max * (i + 1) as f64 / panels as f64;
            let v = rule.integrate(lo, hi, |x| {
                (2.0 * std::f64::consts::PI * x * y).cos() * self.transform(x)
            });
            acc.add(v);
        }
        2.0 * acc.total() // even integrand
    }

    /// Closed-form transform `Φ(x)`.
    pub fn transform(&self, x: f64) -> f64 {
        let BumpConfig { a, delta, k } = self.config;
        let first = sin_ratio(2.0 * std::f64::consts::PI * a, x); // sin(2πax)/(πx)
        let u = 2.0 * std::f64::consts::PI * delta * x / k as f64;
        first * sinc(u).powi(k as i32)
    }

    /// The three envelope branches `(2a, 1/(π|x|), (1/(π|x|))(k/(2π|x|δ))^k)`.
    pub fn bound_branches(&self, x: f64) -> (f64, f64, f64) {
        let BumpConfig { a, delta, k } = self.config;
        let ax = x.abs();
        if ax == 0.0 {
            return (2.0 * a, f64::INFINITY, f64::INFINITY);
        }
        let second = 1.0 / (std::f64::consts::PI * ax);
        // third branch in logs: k·(ln k − ln(2πδ|x|)) − ln(π|x|)
        let ln_third = k as f64
            * ((k as f64).ln() - (2.0 * std::f64::consts::PI * delta * ax).ln())
            - (std::f64::consts::PI * ax).ln();
        let third = if ln_third > 700.0 { f64::INFINITY } else { ln_third.exp() };
        (2.0 * a, second, third)
    }

    /// `min(2a, 1/(π|x|), (1/(π|x|))·(k/(2π|x|δ))^k)`.
    pub fn bound(&self, x: f64) -> f64 {
        let (b1, b2, b3) = self.bound_branches(x);
        b1.min(b2).min(b3)
    }

    pub fn support(&self) -> f64 {
        self.config.a + self.config.delta
    }
}

/// sin(c·x)/(π·x) with the removable singularity at x = 0.
fn sin_ratio(c: f64, x: f64) -> f64 {
    let w = c * x;
    if w.abs() < 1e-8 {
        (c - c * w * w / 6.0) / std::f64::consts::PI
    } else {
        w.sin() / (std::f64::consts::PI * x)
    }
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Construct the bump (validation + closed forms; nothing to precompute).
pub fn build_bump(config: BumpConfig) -> Bump {
    Bump { config }
}
