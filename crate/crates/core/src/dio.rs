//! Exact counting of square-root Diophantine inequalities over dyadic boxes,
//! plus minimal-gap search and fractional-part counting.
//!
//! Counting `|Σ sign_j·√n_j| < Δ` runs meet-in-the-middle: the suffix side
//! is sorted by its partial sum, the prefix side streams and range-queries
//! it. Partial sums are f64 with a rigorous error margin; any tuple landing
//! within the margin of the boundary `±Δ` or of zero is resolved exactly
//! through the radical kernel form (zero test is combinatorial, magnitude
//! comparisons escalate precision until the interval excludes the rational
//! Δ — which always happens, since an irrational sum never equals a
//! rational and rational sums collapse to integers).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hp::dyadic_parts;
use crate::numeric::dd::sqrt_u64;
use crate::radical::RadicalSum;

/// Enumeration budget for exact counting.
pub const VOLUME_BUDGET: u128 = 1_000_000_000;

/// Cartesian product of dyadic ranges `(N_j, 2N_j]` with a sign pattern.
#[derive(Clone, Debug)]
pub struct DyadicBox {
    ranges: Vec<u64>,
    signs: Vec<i8>,
}

impl DyadicBox {
    pub fn new(ranges: Vec<u64>, signs: Vec<i8>) -> Result<Self> {
        let k = ranges.len();
        if !(3..=7).contains(&k) {
            return Err(Error::invalid(format!("box arity must be 3..=7, got {k}")));
        }
        if signs.len() != k {
            return Err(Error::invalid("ranges/signs length mismatch"));
        }
        if ranges.contains(&0) {
            return Err(Error::invalid("range parameters must be >= 1"));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invalid("signs must be ±1"));
        }
        if signs[0] != 1 {
            return Err(Error::invalid("first sign must be +1"));
        }
        Ok(DyadicBox { ranges, signs })
    }

    pub fn k(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[u64] {
        &self.ranges
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn volume(&self) -> u128 {
        self.ranges.iter().map(|&n| n as u128).product()
    }
}

/// Exact count next to a lemma-style bound.
#[derive(Clone, Copy, Debug)]
pub struct CountReport {
    pub count: u64,
    pub bound: f64,
    pub ratio: f64,
    /// 7, 8, 9, 10 for the dyadic-box lemmas; 4 for the fractional count.
    pub lemma_id: u8,
}

/// Positive rational threshold; f64 thresholds convert exactly (dyadic).
#[derive(Clone, Debug)]
pub struct Threshold {
    pub num: BigInt,
    pub den: BigUint,
}

impl Threshold {
    pub fn from_f64(delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::invalid(format!("Δ must be positive and finite, got {delta}")));
        }
        let (m, e) = dyadic_parts(delta);
        Ok(if e >= 0 {
            Threshold { num: m << e as u64, den: BigUint::one() }
        } else {
            Threshold { num: m, den: BigUint::one() << (-e) as u64 }
        })
    }

    fn approx(&self) -> f64 {
        let n = self.num.to_f64().unwrap_or(f64::INFINITY);
        let d = self.den.to_f64().unwrap_or(f64::INFINITY);
        n / d
    }
}

/// Exact hit test for one tuple: `|Σ sign√n| < Δ` (strict), optionally
/// excluding exact zero. `s_float` is the f64 partial-sum estimate.
fn tuple_hits(
    ns: &[u64],
    signs: &[i8],
    s_float: f64,
    thr: &Threshold,
    delta_f: f64,
    margin: f64,
    exclude_zero: bool,
) -> bool {
    let s_abs = s_float.abs();
    if s_abs >= delta_f + margin {
        return false;
    }
    let certainly_inside = s_abs <= delta_f - margin;
    if certainly_inside && (!exclude_zero || s_abs >= margin) {
        return true;
    }
    // boundary or possible zero: resolve exactly
    let sum = RadicalSum::from_signed_roots(signs, ns).expect("validated box");
    if sum.is_zero() {
        return !exclude_zero; // |0| < Δ for every positive Δ
    }
    sum.cmp_abs_vs_rational(&thr.num, &thr.den) == Ordering::Less
}

/// Inclusive per-slot value bounds `[lo, hi]`.
type Bounds = (u64, u64);

fn dyadic_bounds(ranges: &[u64]) -> Vec<Bounds> {
    ranges.iter().map(|&n| (n + 1, 2 * n)).collect()
}

/// Mixed-radix odometer over per-slot bounds with running prefix sums.
struct SumOdometer {
    bounds: Vec<Bounds>,
    signs: Vec<f64>,
    values: Vec<u64>,
    prefix: Vec<f64>, // prefix[i] = Σ_{j<i} sign_j·√values[j]
    started: bool,
}

impl SumOdometer {
    fn new(bounds: &[Bounds], signs: &[i8]) -> Self {
        let k = bounds.len();
        let values: Vec<u64> = bounds.iter().map(|&(lo, _)| lo).collect();
        let mut odo = SumOdometer {
            bounds: bounds.to_vec(),
            signs: signs.iter().map(|&s| s as f64).collect(),
            values,
            prefix: vec![0.0; k + 1],
            started: false,
        };
        for i in 0..k {
            odo.refresh(i);
        }
        odo
    }

    fn refresh(&mut self, i: usize) {
        self.prefix[i + 1] = self.prefix[i] + self.signs[i] * (self.values[i] as f64).sqrt();
    }

    fn sum(&self) -> f64 {
        self.prefix[self.bounds.len()]
    }

    fn values(&self) -> &[u64] {
        &self.values
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let k = self.bounds.len();
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.values[i] < self.bounds[i].1 {
                self.values[i] += 1;
                for j in i + 1..k {
                    self.values[j] = self.bounds[j].0;
                }
                for j in i..k {
                    self.refresh(j);
                }
                return true;
            }
        }
    }
}

/// Exact solution count of `(0 <) |Σ sign_j·√n_j| < Δ` over the box.
pub fn count_solutions(bx: &DyadicBox, delta: f64, exclude_zero: bool) -> Result<u64> {
    count_solutions_rational(bx, &Threshold::from_f64(delta)?, exclude_zero)
}

/// Same, with an arbitrary positive rational threshold (used when the
/// boundary must be placed finer than f64, e.g. ±1e-30 perturbations).
pub fn count_solutions_rational(
    bx: &DyadicBox,
    thr: &Threshold,
    exclude_zero: bool,
) -> Result<u64> {
    count_bounds_mitm(&dyadic_bounds(&bx.ranges), &bx.signs, thr, exclude_zero)
}

fn bounds_volume(bounds: &[Bounds]) -> u128 {
    bounds.iter().map(|&(lo, hi)| (hi - lo + 1) as u128).product()
}

fn bounds_margin(bounds: &[Bounds], delta_f: f64) -> f64 {
    let sqrt_sum: f64 = bounds.iter().map(|&(_, hi)| (hi as f64).sqrt()).sum();
    8.0 * f64::EPSILON * sqrt_sum + delta_f * 4.0 * f64::EPSILON + 1e-300
}

/// Meet-in-the-middle count over explicit inclusive per-slot bounds.
fn count_bounds_mitm(
    bounds: &[Bounds],
    signs: &[i8],
    thr: &Threshold,
    exclude_zero: bool,
) -> Result<u64> {
    if !thr.num.is_positive() {
        return Err(Error::invalid("Δ must be positive"));
    }
    let vol = bounds_volume(bounds);
    if vol > VOLUME_BUDGET {
        return Err(Error::resource(format!(
            "box volume {vol} exceeds enumeration budget {VOLUME_BUDGET}"
        )));
    }
    let k = bounds.len();
    // suffix side B is the stored/sorted one; prefix side A streams.
    // choose the split so the stored side stays at most ~√volume.
    let mut split = k - 1;
    let mut suffix_vol: u128 = (bounds[k - 1].1 - bounds[k - 1].0 + 1) as u128;
    while split > 1 && suffix_vol * suffix_vol < vol {
        split -= 1;
        suffix_vol *= (bounds[split].1 - bounds[split].0 + 1) as u128;
    }
    let (a_bounds, b_bounds) = bounds.split_at(split);
    let (a_signs, b_signs) = signs.split_at(split);

    let delta_f = thr.approx();
    let margin = bounds_margin(bounds, delta_f);

    // enumerate and sort side B
    let mut side_b: Vec<(f64, u64)> = Vec::with_capacity(suffix_vol as usize);
    let mut odo = SumOdometer::new(b_bounds, b_signs);
    let mut code = 0u64;
    while odo.advance() {
        side_b.push((odo.sum(), code));
        code += 1;
    }
    side_b.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let decode_b = |mut code: u64| -> Vec<u64> {
        let mut out = vec![0u64; b_bounds.len()];
        for i in (0..b_bounds.len()).rev() {
            let width = b_bounds[i].1 - b_bounds[i].0 + 1;
            out[i] = b_bounds[i].0 + code % width;
            code /= width;
        }
        out
    };

    let mut count = 0u64;
    let mut tuple = vec![0u64; k];
    let mut odo_a = SumOdometer::new(a_bounds, a_signs);
    while odo_a.advance() {
        let sa = odo_a.sum();
        // σ_B band for |σ_A + σ_B| < Δ, widened by the margin
        let lo = -sa - delta_f - margin;
        let hi = -sa + delta_f + margin;
        let start = side_b.partition_point(|&(s, _)| s < lo);
        for &(sb, bcode) in &side_b[start..] {
            if sb > hi {
                break;
            }
            let s = sa + sb;
            // cheap certain-inside shortcut without tuple materialization
            let s_abs = s.abs();
            if s_abs <= delta_f - margin && (!exclude_zero || s_abs >= margin) {
                count += 1;
                continue;
            }
            tuple[..split].copy_from_slice(odo_a.values());
            tuple[split..].copy_from_slice(&decode_b(bcode));
            if tuple_hits(&tuple, signs, s, thr, delta_f, margin, exclude_zero) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Reference count by plain nested enumeration; same certified hit test,
/// no meet-in-the-middle join. Regression oracle for [`count_solutions`].
pub fn count_solutions_naive(bx: &DyadicBox, delta: f64, exclude_zero: bool) -> Result<u64> {
    let thr = Threshold::from_f64(delta)?;
    let vol = bx.volume();
    if vol > VOLUME_BUDGET {
        return Err(Error::resource(format!(
            "box volume {vol} exceeds enumeration budget {VOLUME_BUDGET}"
        )));
    }
    let bounds = dyadic_bounds(&bx.ranges);
    let delta_f = thr.approx();
    let margin = bounds_margin(&bounds, delta_f);
    let mut count = 0u64;
    let mut odo = SumOdometer::new(&bounds, &bx.signs);
    while odo.advance() {
        if tuple_hits(odo.values(), &bx.signs, odo.sum(), &thr, delta_f, margin, exclude_zero) {
            count += 1;
        }
    }
    Ok(count)
}

/// Which dyadic-box counting bound to report against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaId {
    L7,
    L8,
    L9,
    L10,
}

impl LemmaId {
    pub fn id(self) -> u8 {
        match self {
            LemmaId::L7 => 7,
            LemmaId::L8 => 8,
            LemmaId::L9 => 9,
            LemmaId::L10 => 10,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            7 => Ok(LemmaId::L7),
            8 => Ok(LemmaId::L8),
            9 => Ok(LemmaId::L9),
            10 => Ok(LemmaId::L10),
            other => Err(Error::invalid(format!("unknown lemma id {other}"))),
        }
    }
}

fn ascending(vals: &[u64]) -> bool {
    vals.windows(2).all(|w| w[0] <= w[1])
}

/// The lemma's right side with implied constant 1; `ε` realized as one `ln`.
fn lemma_bound(bx: &DyadicBox, delta: f64, lemma: LemmaId, exclude_zero: bool) -> Result<f64> {
    let r = &bx.ranges;
    let s = &bx.signs;
    let k = bx.k();
    let prod: f64 = r.iter().map(|&n| n as f64).product();
    match lemma {
        LemmaId::L7 => {
            if s.iter().all(|&v| v == 1) {
                return Err(Error::invalid("lemma 7 needs a mixed sign pattern"));
            }
            if r.iter().any(|&n| n < 2) {
                return Err(Error::invalid("lemma 7 needs range parameters > 1"));
            }
            let e = *r.iter().max().unwrap() as f64;
            if delta > e.sqrt() {
                return Err(Error::invalid("lemma 7 needs Δ ≤ max(N)^{1/2}"));
            }
            Ok(delta * e.powf(-0.5) * prod + prod / e)
        }
        LemmaId::L8 | LemmaId::L9 => {
            if k != 7 {
                return Err(Error::invalid("lemmas 8/9 are 7-variable bounds"));
            }
            let expected: &[i8] = &[1, 1, 1, 1, -1, -1, -1];
            let ok_signs = match lemma {
                LemmaId::L8 => s == expected,
                LemmaId::L9 => {
                    s[..5] == [1, 1, 1, 1, 1] && (s[5] == 1 || s[5] == -1) && s[6] == -1
                }
                _ => unreachable!(),
            };
            if !ok_signs {
                return Err(Error::invalid("sign pattern does not match the lemma shape"));
            }
            if !exclude_zero {
                return Err(Error::invalid("lemmas 8/9 count 0 < |sum| < Δ"));
            }
            // slots (n,m,k,ℓ,r,s,q): N≤M≤K≤L, R≤S≤Q, L ≍ Q, Δ ≤ √Q
            if !ascending(&r[..4]) || !ascending(&r[4..]) {
                return Err(Error::invalid(
                    "ranges must be sorted within the (n,m,k,l) and (r,s,q) groups",
                ));
            }
            let l = r[3] as f64;
            let q = r[6] as f64;
            if l.max(q) > 100.0 * l.min(q) {
                return Err(Error::invalid("lemma needs L and Q within a factor 100"));
            }
            if delta > q.sqrt() {
                return Err(Error::invalid("lemma needs Δ ≤ Q^{1/2}"));
            }
            let nmkrs: f64 =
                r[0] as f64 * r[1] as f64 * r[2] as f64 * r[4] as f64 * r[5] as f64;
            Ok(delta * q.sqrt() * prod + nmkrs * l.sqrt() * (2.0 + l).ln())
        }
        LemmaId::L10 => {
            if k != 7 {
                return Err(Error::invalid("lemma 10 is a 7-variable bound"));
            }
            if s[..4] != [1, 1, 1, 1] || s[6] != -1 {
                return Err(Error::invalid("sign pattern does not match the lemma shape"));
            }
            if !exclude_zero {
                return Err(Error::invalid("lemma 10 counts 0 < |sum| < Δ"));
            }
            if r.iter().any(|&n| n < 2) {
                return Err(Error::invalid("lemma 10 needs N_j ≥ 2"));
            }
            let e = *r.iter().max().unwrap() as f64;
            let mut bound = 1.0f64;
            for &n in r {
                let nf = n as f64;
                bound *= delta.powf(1.0 / 7.0) * nf.powf(13.0 / 14.0) + nf.powf(5.0 / 7.0);
            }
            Ok(bound * (2.0 + e).ln())
        }
    }
}

/// Exact count with the chosen lemma's bound and the count/bound ratio.
pub fn count_report(
    bx: &DyadicBox,
    delta: f64,
    exclude_zero: bool,
    lemma: LemmaId,
) -> Result<CountReport> {
    let bound = lemma_bound(bx, delta, lemma, exclude_zero)?;
    let count = count_solutions(bx, delta, exclude_zero)?;
    Ok(CountReport {
        count,
        bound,
        ratio: count as f64 / bound,
        lemma_id: lemma.id(),
    })
}

/// Minimal nonzero |signed sqrt sum| with its witness.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub gap: f64,
    pub witness: Vec<u64>,
    /// `gap · Nmax^{2^{k−2} − 1/2}`, the quantity the minimal-gap lemma
    /// bounds away from zero.
    pub scaled: f64,
}

/// Minimal `|Σ sign_j·√n_j| ≠ 0` over `1 ≤ n_j ≤ nmax`.
pub fn min_nonzero_gap(k: usize, signs: &[i8], nmax: u64) -> Result<GapReport> {
    if !(3..=5).contains(&k) {
        return Err(Error::invalid(format!("gap search supports k in 3..=5, got {k}")));
    }
    if signs.len() != k || signs.iter().any(|&s| s != 1 && s != -1) || signs[0] != 1 {
        return Err(Error::invalid("signs must be ±1, first +1, length k"));
    }
    if signs.iter().all(|&s| s == 1) {
        return Err(Error::invalid("gap search needs a mixed sign pattern"));
    }
    if nmax < 2 {
        return Err(Error::invalid("nmax must be >= 2"));
    }
    let half = k / 2; // stored suffix side
    let stream_arity = k - half;
    let stored: u128 = (nmax as u128).pow(half as u32);
    let streamed: u128 = (nmax as u128).pow(stream_arity as u32);
    if stored > 40_000_000 || streamed > 100_000_000 {
        return Err(Error::resource(format!(
            "gap search over nmax={nmax}, k={k} exceeds the enumeration budget"
        )));
    }

    let (a_signs, b_signs) = signs.split_at(stream_arity);
    let margin = 8.0 * f64::EPSILON * (k as f64) * (nmax as f64).sqrt() + 1e-300;

    // stored side: all suffix sums over 1..=nmax per slot, sorted
    let bounds: Vec<Bounds> = vec![(1, nmax); k];
    let mut side_b: Vec<(f64, u64)> = Vec::with_capacity(stored as usize);
    {
        let mut odo = SumOdometer::new(&bounds[..half], b_signs);
        let mut code = 0u64;
        while odo.advance() {
            side_b.push((odo.sum(), code));
            code += 1;
        }
    }
    side_b.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let decode_b = |mut code: u64| -> Vec<u64> {
        let mut out = vec![0u64; half];
        for slot in out.iter_mut().rev() {
            *slot = 1 + code % nmax;
            code /= nmax;
        }
        out
    };

    // pass 1: float minimum over certainly-nonzero pairs, suspects collected
    let mut min_float = f64::INFINITY;
    let mut suspects: Vec<(u64, u64)> = Vec::new(); // (a_code, b_code)
    let mut odo_a = SumOdometer::new(&bounds[..stream_arity], a_signs);
    let mut a_code = 0u64;
    while odo_a.advance() {
        let sa = odo_a.sum();
        let idx = side_b.partition_point(|&(s, _)| s < -sa);
        let lo = idx.saturating_sub(1);
        let hi = (idx + 1).min(side_b.len());
        for &(sb, bcode) in &side_b[lo..hi] {
            let s_abs = (sa + sb).abs();
            if s_abs <= margin {
                if suspects.len() < 5_000_000 {
                    suspects.push((a_code, bcode));
                }
            } else if s_abs < min_float {
                min_float = s_abs;
            }
        }
        a_code += 1;
    }

    // pass 2: collect everything below min_float + margin and certify
    let threshold = min_float + 2.0 * margin;
    let mut candidates: Vec<(Vec<u64>, f64)> = Vec::new();
    let mut odo_a = SumOdometer::new(&bounds[..stream_arity], a_signs);
    while odo_a.advance() {
        let sa = odo_a.sum();
        let lo = -sa - threshold;
        let hi = -sa + threshold;
        let start = side_b.partition_point(|&(s, _)| s < lo);
        for &(sb, bcode) in &side_b[start..] {
            if sb > hi {
                break;
            }
            let mut tuple = odo_a.values().to_vec();
            tuple.extend(decode_b(bcode));
            candidates.push((tuple, (sa + sb).abs()));
        }
    }
    for (a_code, b_code) in suspects {
        let mut tuple = decode_a_values(a_code, stream_arity, nmax);
        tuple.extend(decode_b(b_code));
        candidates.push((tuple, 0.0));
    }

    let mut best: Option<(f64, Vec<u64>)> = None;
    for (tuple, _) in candidates {
        let sum = RadicalSum::from_signed_roots(signs, &tuple)?;
        if sum.is_zero() {
            continue;
        }
        let value = sum.numeric_value(1e-12).mid().abs();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, tuple));
        }
    }
    let (gap, witness) = best.expect("a mixed-sign pattern always has nonzero sums");
    let exponent = (1u64 << (k - 2)) as f64 - 0.5;
    Ok(GapReport {
        scaled: gap * (nmax as f64).powf(exponent),
        gap,
        witness,
    })
}

fn decode_a_values(mut code: u64, arity: usize, nmax: u64) -> Vec<u64> {
    let mut out = vec![0u64; arity];
    for slot in out.iter_mut().rev() {
        *slot = 1 + code % nmax;
        code /= nmax;
    }
    out
}

/// Exact count of `k ∈ (K, 2K]` with `‖β + α√k‖ < δ`, against the
/// `Kδ + K^{1/2}·ln K` envelope.
pub fn fractional_count(alpha: f64, beta: f64, big_k: u64, delta: f64) -> Result<CountReport> {
    if big_k < 10 {
        return Err(Error::invalid(format!("K must be >= 10, got {big_k}")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::invalid(format!("δ must lie in (0, 1/2), got {delta}")));
    }
    let kf = big_k as f64;
    if !(alpha.abs() >= 2.0 / kf.sqrt() && alpha.abs() <= 10.0 * kf.sqrt()) {
        return Err(Error::invalid(format!(
            "α must satisfy 2K^(-1/2) ≤ |α| ≤ 10·K^(1/2), got {alpha}"
        )));
    }
    if big_k > 1_000_000_000 {
        return Err(Error::resource(format!("K={big_k} exceeds the enumeration budget")));
    }
    let mut count = 0u64;
    for k in big_k + 1..=2 * big_k {
        let t = sqrt_u64(k).mul_f64(alpha).add_f64(beta);
        let f = t.fract().to_f64();
        let dist = f.min(1.0 - f);
        if dist < delta {
            count += 1;
        }
    }
    let bound = kf * delta + kf.sqrt() * kf.ln();
    Ok(CountReport {
        count,
        bound,
        ratio: count as f64 / bound,
        lemma_id: 4,
    })
}
