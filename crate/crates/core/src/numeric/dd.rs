//! Double-double arithmetic: unevaluated sums `hi + lo` carrying ~106 bits.
//!
//! The error-free transforms are the classical ones (Knuth two-sum, Dekker
//! fast two-sum, FMA two-product); the composite operations follow the
//! Hida–Li–Bailey double-double kernels. Used wherever a plain f64 loses the
//! game: phase reduction of oscillating terms with huge arguments, and
//! summation of long positive series that must be reproducible to the last
//! bit across different enumeration orders.

/// `a + b` as an exact pair `(s, e)` with `s = fl(a+b)`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a + b` as an exact pair, assuming `|a| >= |b|` (or either is zero).
#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `a * b` as an exact pair `(p, e)` with `p = fl(a*b)`.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Unevaluated double-double value `hi + lo`, `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

// method names follow the dd-kernel convention rather than operator traits
#[allow(clippy::should_implement_trait)]
impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion; every u64 splits into two f64 halves.
    pub fn from_u64(n: u64) -> Self {
        let hi = n as f64;
        let r = (n as i128) - (hi as i128);
        Dd::new(hi, r as f64)
    }

    pub fn from_u128(n: u128) -> Self {
        let hi64 = (n >> 64) as u64;
        let lo64 = n as u64;
        Dd::from_u64(hi64)
            .mul_f64(2f64.powi(64))
            .add(Dd::from_u64(lo64))
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Self {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let (s1, s2) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Self {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Self {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (p1, p2) = quick_two_sum(p1, p2);
        Dd { hi: p1, lo: p2 }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let (p1, p2) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi: p1, lo: p2 }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e + q3)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        self.div(Dd::from_f64(b))
    }

    /// Square root of a nonnegative value (Karp's high-precision step).
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0);
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Dd::from_f64(ax);
        let err = self.sub(ax_dd.mul(ax_dd)).hi;
        ax_dd.add_f64(err * (x * 0.5))
    }

    /// Fractional part in `[0, 1)`, computed without losing the low word.
    pub fn fract(self) -> Self {
        let fl = self.hi.floor();
        // hi - floor(hi) is exact
        let mut r = Dd::new(self.hi - fl, self.lo);
        if r.hi >= 1.0 {
            r = r.add_f64(-1.0);
        } else if r.hi < 0.0 {
            r = r.add_f64(1.0);
        }
        r
    }
}

/// √n for integer n, accurate to ~2⁻¹⁰⁴ relative.
pub fn sqrt_u64(n: u64) -> Dd {
    Dd::from_u64(n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_recovers_rounding_error() {
        let a = 1.0;
        let b = 1e-30;
        let (s, e) = two_sum(a, b);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-30);
    }

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 + 2f64.powi(-29);
        let (p, e) = two_prod(a, b);
        // exact product = 1 + 2^-29 + 2^-30 + 2^-59
        let exact_lo = 2f64.powi(-59);
        assert_eq!(p + e, p); // e below ulp of p
        assert_eq!(e, exact_lo);
    }

    #[test]
    fn from_u64_is_exact() {
        let n = u64::MAX - 12345;
        let d = Dd::from_u64(n);
        let back = d.hi as i128 + d.lo as i128;
        assert_eq!(back, n as i128);
    }

    #[test]
    fn sqrt_squares_back() {
        for &n in &[2u64, 3, 5, 7, 10_000_019, 999_999_999_999] {
            let s = sqrt_u64(n);
            let sq = s.mul(s);
            let err = sq.sub(Dd::from_u64(n)).to_f64().abs();
            assert!(err <= 1e-27 * n as f64, "n={n} err={err}");
        }
    }

    #[test]
    fn fract_handles_large_arguments() {
        // 2^40 + 0.3125 is exactly representable
        let x = Dd::new(2f64.powi(40) + 0.3125, 0.0);
        let f = x.fract();
        assert_eq!(f.to_f64(), 0.3125);
        let y = Dd::new(7.0, -1e-20);
        let f = y.fract();
        assert!(f.to_f64() > 0.9999999, "wrapped below zero: {f:?}");
    }

    #[test]
    fn div_matches_known_ratio() {
        let a = Dd::from_u64(1).div(Dd::from_u64(3));
        let three = a.mul_f64(3.0);
        assert!((three.to_f64() - 1.0).abs() < 1e-31);
    }
}
