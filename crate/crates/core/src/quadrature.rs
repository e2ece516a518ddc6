//! Adaptive Gauss-Legendre quadrature.

use std::f64::consts::PI;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `order`-point rule by Newton iteration on `P_order`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            // Tricomi's initial guess for the i-th root.
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(order, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel estimate of `int_a^b f`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum::<f64>()
    }

    /// Recursive bisection until a panel agrees with the sum of its halves
    /// to within its share of `abs_tol`.
    pub fn integrate_adaptive<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, abs_tol: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        let whole = self.integrate(f, a, b);
        self.refine(f, a, b, whole, abs_tol, 0)
    }

    fn refine<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = self.integrate(f, a, mid);
        let right = self.integrate(f, mid, b);
        let split = left + right;
        if (split - whole).abs() <= tol || depth >= 48 {
            return split;
        }
        self.refine(f, a, mid, left, 0.5 * tol, depth + 1) + self.refine(f, mid, b, right, 0.5 * tol, depth + 1)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
