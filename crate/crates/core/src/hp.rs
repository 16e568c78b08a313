//! Scaled-integer reference arithmetic.
//!
//! Values are represented as `floor(v · 2^bits)` in big integers, which makes
//! square roots, products and mod-2π reductions exact up to a counted number
//! of final-ulp slips. The verification suites use this as the independent
//! route against the double-double fast paths; the certified comparisons in
//! [`crate::radical`] build on the same primitives.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// arctan(1/x) · 2^bits, truncated. Alternating Machin-style series.
fn arctan_inv_scaled(x: u64, bits: u64) -> BigInt {
    let guard = 32u64;
    let scale = bits + guard;
    let one = BigInt::one() << scale;
    let xsq = BigInt::from(x) * BigInt::from(x);
    let mut denom_pow = BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &one / (&denom_pow * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        denom_pow *= &xsq;
        k += 1;
    }
    sum >> guard
}

/// floor(π · 2^bits), off by at most a couple of final units.
pub fn pi_scaled(bits: u64) -> BigUint {
    let pi: BigInt =
        arctan_inv_scaled(5, bits + 8) * 16 - arctan_inv_scaled(239, bits + 8) * 4;
    (pi >> 8u32).to_biguint().expect("pi is positive")
}

/// floor(√n · 2^bits) for big n.
pub fn sqrt_scaled(n: &BigUint, bits: u64) -> BigUint {
    (n << (2 * bits)).sqrt()
}

/// Exact dyadic decomposition of a finite f64: `x = sign · m · 2^e`.
pub fn dyadic_parts(x: f64) -> (BigInt, i64) {
    assert!(x.is_finite());
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    (BigInt::from(sign) * BigInt::from(m), e)
}

/// Fixed working scale with a precomputed π.
pub struct Scale {
    bits: u64,
    pi: BigUint,
}

impl Scale {
    pub fn new(bits: u64) -> Self {
        Scale { bits, pi: pi_scaled(bits) }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn pi(&self) -> &BigUint {
        &self.pi
    }

    pub fn to_f64(&self, v: &BigInt) -> f64 {
        let f = v.to_f64().unwrap_or(f64::NAN);
        f / 2f64.powi(self.bits as i32)
    }

    /// floor(√(n·x) · 2^bits) for integer n and positive dyadic x.
    pub fn sqrt_n_times_x(&self, n: u64, x: f64) -> BigUint {
        assert!(x > 0.0);
        let (m, e) = dyadic_parts(x);
        let m = m.to_biguint().expect("positive");
        let prod = BigUint::from(n) * m;
        let shift = 2 * self.bits as i64 + e;
        assert!(shift >= 0, "scale too small for exponent {e}");
        (prod << shift as u64).sqrt()
    }

    /// cos(4π√(nx) − π/4) via exact scaled reduction mod 2π.
    pub fn cos_voronoi_phase(&self, n: u64, x: f64) -> f64 {
        let root = self.sqrt_n_times_x(n, x);
        let four_pi_root = (BigInt::from(self.pi.clone()) * BigInt::from(root) * 4i32)
            >> self.bits;
        let quarter_pi = BigInt::from(self.pi.clone()) >> 2;
        let phase = four_pi_root - quarter_pi;
        let two_pi = BigInt::from(self.pi.clone()) << 1;
        let mut reduced: BigInt = phase % &two_pi;
        if reduced.is_negative() {
            reduced += &two_pi;
        }
        self.to_f64(&reduced).cos()
    }

    /// frac(x · √n) for the e(x√n) phase, dyadic x ≥ 0.
    pub fn frac_x_sqrt_n(&self, x: f64, n: u64) -> f64 {
        assert!(x >= 0.0);
        if x == 0.0 {
            return 0.0;
        }
        let (m, e) = dyadic_parts(x);
        let m = m.to_biguint().expect("nonnegative");
        let guard = 64u64;
        // x√n·2^bits = m·(√n·2^{bits+guard})·2^{e-guard}
        let root = sqrt_scaled(&BigUint::from(n), self.bits + guard);
        let prod = BigInt::from(m * root);
        let shift = e - guard as i64;
        let scaled = if shift >= 0 { prod << shift as u64 } else { prod >> (-shift) as u64 };
        let one = BigInt::one() << self.bits;
        let mut reduced = scaled % &one;
        if reduced.is_negative() {
            reduced += &one;
        }
        self.to_f64(&reduced)
    }
}
