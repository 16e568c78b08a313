//! Exact arithmetic on integer linear combinations of square roots.
//!
//! Every positive integer factors uniquely as `n = a²h` with `h` squarefree;
//! `√n = a√h`. A sum `Σ ±√nᵢ` therefore has a canonical kernel form
//! `Σ c_h √h` over distinct squarefree kernels, and it vanishes as a real
//! number exactly when all coefficients do: the square roots of distinct
//! squarefree integers are linearly independent over the rationals
//! (Besicovitch's theorem). Zero tests are thus purely combinatorial; sign
//! and magnitude queries run a scaled-integer interval evaluation whose
//! precision doubles until the question is settled.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hp;

/// Unique decomposition `n = a²h` with `h` squarefree.
pub fn squarefree_decompose(n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::invalid("squarefree_decompose requires n >= 1"));
    }
    let mut m = n;
    let mut a = 1u64;
    let mut h = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            a *= p.pow(e / 2);
            if e % 2 == 1 {
                h *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover m is prime (or 1), entering with exponent 1
    h *= m;
    Ok((a, h))
}

/// Precomputed `(a, h)` decompositions for all `n <= limit`.
pub struct KernelTable {
    a: Vec<u32>,
    h: Vec<u32>,
}

impl KernelTable {
    pub fn build(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::invalid("kernel table limit must be >= 1"));
        }
        if limit > (1 << 31) {
            return Err(Error::resource(format!(
                "kernel table for {limit} entries needs {} bytes",
                limit.saturating_mul(8)
            )));
        }
        let n = limit as usize;
        let mut spf: Vec<u32> = vec![0; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut a = vec![0u32; n + 1];
        let mut h = vec![0u32; n + 1];
        a[1] = 1;
        h[1] = 1;
        for i in 2..=n {
            let p = spf[i] as usize;
            let mut m = i;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            // decomposition of i from the smaller cofactor m
            a[i] = a[m] * (p as u32).pow(e / 2);
            h[i] = h[m] * if e % 2 == 1 { p as u32 } else { 1 };
        }
        Ok(KernelTable { a, h })
    }

    pub fn limit(&self) -> u64 {
        (self.a.len() - 1) as u64
    }

    #[inline]
    pub fn decompose(&self, n: u64) -> (u64, u64) {
        (self.a[n as usize] as u64, self.h[n as usize] as u64)
    }
}

/// One canonical term `c·√h`, `h` squarefree, `c ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelTerm {
    pub kernel: u64,
    pub coeff: i64,
}

/// Canonical `Σ c_h √h`: kernels strictly increasing, coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadicalSum {
    terms: Vec<KernelTerm>,
}

/// Certified enclosure of a real value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValueInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ValueInterval {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    /// Canonical form of `Σ signᵢ·√nᵢ`.
    pub fn from_signed_roots(signs: &[i8], ns: &[u64]) -> Result<Self> {
        if signs.len() != ns.len() {
            return Err(Error::invalid(format!(
                "sign/value length mismatch: {} vs {}",
                signs.len(),
                ns.len()
            )));
        }
        let mut merged: HashMap<u64, i64> = HashMap::new();
        for (&s, &n) in signs.iter().zip(ns) {
            if s != 1 && s != -1 {
                return Err(Error::invalid(format!("sign must be ±1, got {s}")));
            }
            let (a, h) = squarefree_decompose(n)?;
            *merged.entry(h).or_insert(0) += s as i64 * a as i64;
        }
        Ok(Self::from_merged(merged))
    }

    /// Canonical form from precomputed `(a, h)` pairs with signs.
    pub fn from_kernel_parts(parts: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut merged: HashMap<u64, i64> = HashMap::new();
        for (coeff, kernel) in parts {
            *merged.entry(kernel).or_insert(0) += coeff;
        }
        Self::from_merged(merged)
    }

    fn from_merged(merged: HashMap<u64, i64>) -> Self {
        let mut terms: Vec<KernelTerm> = merged
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(kernel, coeff)| KernelTerm { kernel, coeff })
            .collect();
        terms.sort_by_key(|t| t.kernel);
        RadicalSum { terms }
    }

    /// Exact zero test; no numerics involved.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negated(&self) -> Self {
        RadicalSum {
            terms: self
                .terms
                .iter()
                .map(|t| KernelTerm { kernel: t.kernel, coeff: -t.coeff })
                .collect(),
        }
    }

    /// The sum is a plain integer iff its only kernel is 1 (or it is empty).
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.kernel == 1 => Some(t.coeff),
            _ => None,
        }
    }

    /// Fast f64 evaluation with a rigorous error radius.
    fn f64_enclosure(&self) -> ValueInterval {
        let mut sum = 0.0f64;
        let mut abs_sum = 0.0f64;
        for t in &self.terms {
            let v = t.coeff as f64 * (t.kernel as f64).sqrt();
            sum += v;
            abs_sum += v.abs();
        }
        let radius = (self.terms.len() as f64 + 2.0) * f64::EPSILON * abs_sum;
        ValueInterval { lo: sum - radius, hi: sum + radius }
    }

    /// Enclosing interval `[lo, hi]` of `2^bits · Σ c√h`.
    pub fn interval_scaled(&self, bits: u64) -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for t in &self.terms {
            let root_lo = hp::sqrt_scaled(&BigUint::from(t.kernel), bits);
            let root_hi = &root_lo + 1u32;
            let c = BigInt::from(t.coeff);
            if t.coeff > 0 {
                lo += &c * BigInt::from(root_lo);
                hi += &c * BigInt::from(root_hi);
            } else {
                lo += &c * BigInt::from(root_hi);
                hi += &c * BigInt::from(root_lo);
            }
        }
        (lo, hi)
    }

    /// Certified sign: -1, 0, or +1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let fast = self.f64_enclosure();
        if !fast.contains_zero() {
            return if fast.lo > 0.0 { 1 } else { -1 };
        }
        let mut bits = 128u64;
        loop {
            let (lo, hi) = self.interval_scaled(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "sign escalation ran away");
        }
    }

    /// Enclosing interval of relative width ≤ `rel_err`, sign-determining
    /// whenever the sum is nonzero.
    pub fn numeric_value(&self, rel_err: f64) -> ValueInterval {
        assert!(rel_err > 0.0, "rel_err must be positive");
        if self.is_zero() {
            return ValueInterval { lo: 0.0, hi: 0.0 };
        }
        let fast = self.f64_enclosure();
        if !fast.contains_zero() && fast.width() <= rel_err * fast.mid().abs() {
            return fast;
        }
        let mut bits = 128u64;
        loop {
            let (lo, hi) = self.interval_scaled(bits);
            if lo.is_positive() || hi.is_negative() {
                let scale = 2f64.powi(-(bits as i32));
                let lo_f = (lo.to_f64().unwrap() * scale).next_down();
                let hi_f = (hi.to_f64().unwrap() * scale).next_up();
                let iv = ValueInterval { lo: lo_f, hi: hi_f };
                if iv.width() <= rel_err * iv.mid().abs() {
                    return iv;
                }
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "precision escalation ran away");
        }
    }

    /// Certified comparison of `|Σ c√h|` against the positive rational
    /// `num/den`. Terminates because an irrational sum never equals a
    /// rational, and rational sums (single kernel 1) compare exactly.
    pub fn cmp_abs_vs_rational(&self, num: &BigInt, den: &BigUint) -> Ordering {
        assert!(num.is_positive() && !den.is_zero());
        if let Some(c) = self.as_integer() {
            // |c| vs num/den  ⇔  |c|·den vs num
            return (BigInt::from(c.unsigned_abs()) * BigInt::from(den.clone())).cmp(num);
        }
        let mut bits = 64u64;
        loop {
            let (lo, hi) = self.interval_scaled(bits);
            let (abs_lo, abs_hi) = if lo.is_positive() {
                (lo, hi)
            } else if hi.is_negative() {
                (-hi, -lo)
            } else {
                bits *= 2;
                assert!(bits <= 1 << 20, "comparison escalation ran away");
                continue;
            };
            // |sum| ∈ [abs_lo, abs_hi]·2^-bits vs num/den
            let lhs_hi = abs_hi * BigInt::from(den.clone());
            let lhs_lo = abs_lo * BigInt::from(den.clone());
            let rhs = num << bits;
            if lhs_hi < rhs {
                return Ordering::Less;
            }
            if lhs_lo > rhs {
                return Ordering::Greater;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "comparison escalation ran away");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decompose_examples() {
        assert_eq!(squarefree_decompose(1).unwrap(), (1, 1));
        assert_eq!(squarefree_decompose(12).unwrap(), (2, 3));
        assert_eq!(squarefree_decompose(49).unwrap(), (7, 1));
        assert!(squarefree_decompose(0).is_err());
    }

    #[test]
    fn kernel_table_agrees_with_trial_division() {
        let table = KernelTable::build(5000).unwrap();
        for n in 1..=5000u64 {
            assert_eq!(table.decompose(n), squarefree_decompose(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn same_kernel_cancellation() {
        // √2 + 2√2 − 3√2 = 0
        let s = RadicalSum::from_signed_roots(&[1, 1, -1], &[2, 8, 18]).unwrap();
        assert!(s.is_zero());
        // 1 + 1 − 2 = 0
        let s = RadicalSum::from_signed_roots(&[1, 1, -1], &[1, 1, 4]).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn distinct_kernels_survive() {
        let s = RadicalSum::from_signed_roots(&[1, 1, -1], &[2, 3, 5]).unwrap();
        assert_eq!(
            s.terms(),
            &[
                KernelTerm { kernel: 2, coeff: 1 },
                KernelTerm { kernel: 3, coeff: 1 },
                KernelTerm { kernel: 5, coeff: -1 }
            ]
        );
        assert!(!s.is_zero());
    }

    #[test]
    fn numeric_value_examples() {
        let empty = RadicalSum::zero();
        let iv = empty.numeric_value(1e-10);
        assert_eq!((iv.lo, iv.hi), (0.0, 0.0));

        let s = RadicalSum::from_signed_roots(&[1, 1, -1], &[2, 3, 5]).unwrap();
        let iv = s.numeric_value(1e-12);
        let expect = 2f64.sqrt() + 3f64.sqrt() - 5f64.sqrt();
        assert!((iv.mid() - expect).abs() < 1e-9);
        assert!((iv.mid() - 0.910_196_4).abs() < 1e-6);

        // 10 − 7√2 ≈ 0.1005
        let s = RadicalSum::from_kernel_parts([(10, 1), (-7, 2)]);
        let iv = s.numeric_value(1e-12);
        assert!((iv.mid() - 0.100505063).abs() < 1e-8);
        assert!(iv.width() <= 1e-12 * iv.mid().abs() * 1.01);
    }

    #[test]
    fn sign_of_tight_cancellation() {
        // √10006 − √10005 > 0, about 5e-3; and a much tighter one:
        // 1 + √2 + √3 − √(2+...) style near-misses still resolve
        let s = RadicalSum::from_kernel_parts([(1, 10006), (-1, 10005)]);
        assert_eq!(s.sign(), 1);
        let s = RadicalSum::from_kernel_parts([(-1, 10006), (1, 10005)]);
        assert_eq!(s.sign(), -1);
    }

    #[test]
    fn is_zero_matches_high_precision_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        // 2^-670 scale ~ 1e-201; oracle threshold |v| < 1e-100
        let bits = 670u64;
        let threshold_num = BigInt::from(1u32) << bits; // compare |v_scaled|·10^100 < 2^670
        let pow10_100 = BigInt::from(10u32).pow(100);
        let mut zeros = 0;
        for round in 0..10_000 {
            let (signs, ns) = if round % 10 == 0 {
                // planted cancellation: a√h + b√h − (a+b)√h = 0, twice over
                let mut signs = Vec::new();
                let mut ns = Vec::new();
                for _ in 0..rng.gen_range(1..=2) {
                    let h = [1u64, 2, 3, 5, 6, 7, 10, 11][rng.gen_range(0..8)];
                    let a = rng.gen_range(1..=5u64);
                    let b = rng.gen_range(1..=5u64);
                    signs.extend([1i8, 1, -1]);
                    ns.extend([a * a * h, b * b * h, (a + b) * (a + b) * h]);
                }
                (signs, ns)
            } else {
                let k = rng.gen_range(2..=7usize);
                let mut signs = Vec::with_capacity(k);
                let mut ns = Vec::with_capacity(k);
                for _ in 0..k {
                    signs.push(if rng.gen_bool(0.5) { 1i8 } else { -1 });
                    ns.push(rng.gen_range(1..=10_000u64));
                }
                (signs, ns)
            };
            let s = RadicalSum::from_signed_roots(&signs, &ns).unwrap();
            let (lo, hi) = s.interval_scaled(bits);
            let small = {
                let abs_bound = lo.abs().max(hi.abs());
                abs_bound * &pow10_100 < threshold_num
            };
            assert_eq!(s.is_zero(), small, "signs={signs:?} ns={ns:?}");
            if s.is_zero() {
                zeros += 1;
            } else {
                // Besicovitch soundness at 200 digits: |value| > 1e-150
                let abs_lo = if lo.is_positive() { lo } else { -hi };
                let pow10_150 = BigInt::from(10u32).pow(150);
                assert!(
                    abs_lo * pow10_150 > threshold_num,
                    "nonzero sum below 1e-150: signs={signs:?} ns={ns:?}"
                );
            }
        }
        // the random scan must actually hit both branches
        assert!(zeros > 0, "no zero tuples sampled");
    }

    #[test]
    fn cmp_abs_vs_rational_on_integer_sums() {
        // √4 + √9 − √1 = 2 + 3 − 1 = 4
        let s = RadicalSum::from_signed_roots(&[1, 1, -1], &[4, 9, 1]).unwrap();
        assert_eq!(s.as_integer(), Some(4));
        let den = BigUint::from(1u32);
        assert_eq!(s.cmp_abs_vs_rational(&BigInt::from(5), &den), Ordering::Less);
        assert_eq!(s.cmp_abs_vs_rational(&BigInt::from(4), &den), Ordering::Equal);
        assert_eq!(s.cmp_abs_vs_rational(&BigInt::from(3), &den), Ordering::Greater);
    }

    #[test]
    fn cmp_abs_vs_rational_on_irrational_sums() {
        let s = RadicalSum::from_kernel_parts([(1, 2)]); // √2
        let den = BigUint::from(1_000_000u64);
        // √2 vs 1.414213 and vs 1.414214
        assert_eq!(
            s.cmp_abs_vs_rational(&BigInt::from(1_414_213), &den),
            Ordering::Greater
        );
        assert_eq!(
            s.cmp_abs_vs_rational(&BigInt::from(1_414_214), &den),
            Ordering::Less
        );
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent(
            values in proptest::collection::vec((1u64..2000, any::<bool>()), 1..8)
        ) {
            let signs: Vec<i8> = values.iter().map(|&(_, s)| if s { 1 } else { -1 }).collect();
            let ns: Vec<u64> = values.iter().map(|&(n, _)| n).collect();
            let s = RadicalSum::from_signed_roots(&signs, &ns).unwrap();
            // re-expand canonical terms: coeff·√kernel with coeff = c means
            // |c| copies of sign(c)·√(kernel) — use from_kernel_parts directly
            let again = RadicalSum::from_kernel_parts(
                s.terms().iter().map(|t| (t.coeff, t.kernel))
            );
            prop_assert_eq!(s, again);
        }

        #[test]
        fn negation_negates_interval(
            values in proptest::collection::vec((1u64..500, any::<bool>()), 1..6)
        ) {
            let signs: Vec<i8> = values.iter().map(|&(_, s)| if s { 1 } else { -1 }).collect();
            let ns: Vec<u64> = values.iter().map(|&(n, _)| n).collect();
            let s = RadicalSum::from_signed_roots(&signs, &ns).unwrap();
            let n = s.negated();
            let iv = s.numeric_value(1e-10);
            let niv = n.numeric_value(1e-10);
            prop_assert_eq!(iv.lo, -niv.hi);
            prop_assert_eq!(iv.hi, -niv.lo);
        }
    }
}
