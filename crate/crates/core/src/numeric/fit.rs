//! Least-squares slope fits for growth-exponent estimates.

use num_traits::Float;

/// Slope of the least-squares line through `points`.
pub fn slope<F: Float>(points: &[(F, F)]) -> F {
    let n = F::from(points.len()).unwrap();
    let mut mx = F::zero();
    let mut my = F::zero();
    for &(x, y) in points {
        mx = mx + x;
        my = my + y;
    }
    mx = mx / n;
    my = my / n;
    let mut num = F::zero();
    let mut den = F::zero();
    for &(x, y) in points {
        num = num + (x - mx) * (y - my);
        den = den + (x - mx) * (x - mx);
    }
    num / den
}

/// Slope of `ln|y|` against `ln x`: the fitted growth exponent of `y ~ x^e`.
pub fn log_log_slope<F: Float>(points: &[(F, F)]) -> F {
    let logged: Vec<(F, F)> = points
        .iter()
        .map(|&(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    slope(&logged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let pts: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&t: &f64| (t, 3.7 * t.powf(1.75)))
            .collect();
        assert!((log_log_slope(&pts) - 1.75).abs() < 1e-12);
    }

    #[test]
    fn handles_negative_values_via_abs() {
        let pts: Vec<(f64, f64)> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&t: &f64| (t, -2.0 * t.powf(0.5)))
            .collect();
        assert!((log_log_slope(&pts) - 0.5).abs() < 1e-12);
    }
}
