//! Compensated summation.
//!
//! Two flavours: a generic Neumaier accumulator for any float scalar, and a
//! double-double accumulator used where the result must be reproducible to
//! the final bit regardless of how terms were grouped (singular-series
//! cross-parametrization checks, odd-moment cancellation).

use num_traits::Float;

use super::dd::Dd;

/// Kahan–Neumaier compensated sum, generic over the float scalar.
#[derive(Clone, Copy, Debug)]
pub struct Neumaier<F: Float> {
    sum: F,
    comp: F,
}

impl<F: Float> Default for Neumaier<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Float> Neumaier<F> {
    pub fn new() -> Self {
        Neumaier { sum: F::zero(), comp: F::zero() }
    }

    #[inline]
    pub fn add(&mut self, x: F) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> F {
        self.sum + self.comp
    }

    pub fn sum_iter<I: IntoIterator<Item = F>>(iter: I) -> F {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc.total()
    }
}

/// Double-double accumulator: ~106-bit running sum of f64 or Dd terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct DdAcc {
    sum: Dd,
}

impl DdAcc {
    pub fn new() -> Self {
        DdAcc { sum: Dd::ZERO }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.sum = self.sum.add_f64(x);
    }

    #[inline]
    pub fn add_dd(&mut self, x: Dd) {
        self.sum = self.sum.add(x);
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum.to_f64()
    }

    #[inline]
    pub fn total_dd(&self) -> Dd {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_beats_naive_on_cancelling_series() {
        // 1 + 1e100 + 1 - 1e100 = 2; naive summation returns 0
        let terms = [1.0f64, 1e100, 1.0, -1e100];
        assert_eq!(Neumaier::sum_iter(terms.iter().copied()), 2.0);
    }

    #[test]
    fn dd_acc_is_order_insensitive_for_positive_terms() {
        let terms: Vec<f64> = (1..=20_000).map(|n| 1.0 / (n as f64).powf(0.75)).collect();
        let mut fwd = DdAcc::new();
        for &t in &terms {
            fwd.add(t);
        }
        let mut rev = DdAcc::new();
        for &t in terms.iter().rev() {
            rev.add(t);
        }
        assert_eq!(fwd.total(), rev.total());
    }
}
