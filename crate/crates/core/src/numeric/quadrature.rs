//! Gauss–Legendre quadrature with nodes computed by Newton iteration on the
//! Legendre recurrence. Works for any float scalar; orders up to 32.

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};

/// Legendre value and derivative at `x` for degree `n`.
fn legendre<F: Float + FromPrimitive>(n: usize, x: F) -> (F, F) {
    let mut p_prev = F::one();
    let mut p = x;
    for k in 1..n {
        let kf = F::from_usize(k).unwrap();
        let two_k1 = kf + kf + F::one();
        let next = (two_k1 * x * p - kf * p_prev) / (kf + F::one());
        p_prev = p;
        p = next;
    }
    let nf = F::from_usize(n).unwrap();
    let dp = nf * (x * p - p_prev) / (x * x - F::one());
    (p, dp)
}

/// Quadrature rule on `[-1, 1]`: exact for polynomials of degree `2·order − 1`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<F> {
    nodes: Vec<F>,
    weights: Vec<F>,
}

impl<F: Float + FromPrimitive> GaussLegendre<F> {
    pub fn new(order: usize) -> Result<Self> {
        if !(1..=32).contains(&order) {
            return Err(Error::invalid(format!(
                "quadrature order {order} outside supported range 1..=32"
            )));
        }
        let pi = F::from_f64(std::f64::consts::PI).unwrap();
        let nf = F::from_usize(order).unwrap();
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 0..order {
            let idx = F::from_usize(i).unwrap();
            let three_quarters = F::from_f64(0.75).unwrap();
            let half = F::from_f64(0.5).unwrap();
            let mut x = (pi * (idx + three_quarters) / (nf + half)).cos();
            let mut dp = F::one();
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= F::epsilon() * (F::one() + x.abs()) {
                    let (_, d) = legendre(order, x);
                    dp = d;
                    break;
                }
            }
            let two = F::one() + F::one();
            nodes.push(x);
            weights.push(two / ((F::one() - x * x) * dp * dp));
        }
        nodes.reverse();
        weights.reverse();
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Scaled (node, weight) pairs for integration over `[a, b]`.
    pub fn scaled(&self, a: F, b: F) -> impl Iterator<Item = (F, F)> + '_ {
        let two = F::one() + F::one();
        let half_len = (b - a) / two;
        let mid = (a + b) / two;
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(move |(&x, &w)| (mid + half_len * x, w * half_len))
    }

    pub fn integrate(&self, a: F, b: F, mut f: impl FnMut(F) -> F) -> F {
        let mut acc = F::zero();
        for (x, w) in self.scaled(a, b) {
            acc = acc + w * f(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        for order in 2..=12usize {
            let rule = GaussLegendre::<f64>::new(order).unwrap();
            let deg = 2 * order - 1;
            // integrate x^deg over [0, 1] = 1/(deg+1)
            let got = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "order {order}: {got} vs {want}");
        }
    }

    #[test]
    fn matches_reference_two_point_rule() {
        let rule = GaussLegendre::<f64>::new(2).unwrap();
        let x = 1.0 / 3.0f64.sqrt();
        assert!((rule.nodes[0] + x).abs() < 1e-15);
        assert!((rule.nodes[1] - x).abs() < 1e-15);
        assert!((rule.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_integral_converges() {
        let rule = GaussLegendre::<f64>::new(8).unwrap();
        let got = rule.integrate(0.0, std::f64::consts::PI, |x| x.sin());
        assert!((got - 2.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_order() {
        assert!(GaussLegendre::<f64>::new(0).is_err());
        assert!(GaussLegendre::<f64>::new(33).is_err());
    }
}
