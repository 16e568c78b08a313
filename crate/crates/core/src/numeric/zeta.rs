//! Riemann zeta on the real ray `s > 1` by Euler–Maclaurin.

use crate::error::{Error, Result};

/// Bernoulli numbers B₂, B₄, …, B₁₆.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// ζ(s) for real s > 1, accurate to ~1e-15 relative for s ≥ 1.2.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid(format!("zeta requires s > 1, got {s}")));
    }
    let n = 64u32;
    let nf = n as f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..n {
        let term = (k as f64).powf(-s);
        let t = sum + term;
        comp += if sum.abs() >= term { (sum - t) + term } else { (term - t) + sum };
        sum = t;
    }
    let mut total = sum + comp;
    total += nf.powf(1.0 - s) / (s - 1.0);
    total += 0.5 * nf.powf(-s);
    // Euler–Maclaurin correction: B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s; // s(s+1)...(s+2j-2), starts at j=1 with just s
    let mut fact = 2.0f64; // (2j)!
    for (j, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_j = 2 * (j as i32 + 1);
        total += b / fact * rising * nf.powf(-s - (two_j - 1) as f64);
        // advance to next j: multiply rising by (s+2j-1)(s+2j), fact by (2j+1)(2j+2)
        rising *= (s + (two_j - 1) as f64) * (s + two_j as f64);
        fact *= ((two_j + 1) * (two_j + 2)) as f64;
    }
    Ok(total)
}
