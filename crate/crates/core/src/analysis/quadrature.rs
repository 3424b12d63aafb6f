//! Gauss–Legendre rules.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on `P_n` from the Tricomi initial guesses.
/// `n` must be at least 1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Three-term recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `∫_a^b f` with the given rule mapped onto `[a, b]`.
pub fn integrate_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_exact_for_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let rule = gauss_legendre(n);
            assert!((rule.1.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
            // degree 2n-1 exactly integrated
            let deg = 2 * n - 1;
            let got = integrate_panel(&|x: f64| x.powi(deg as i32 - 1), 0.0, 1.0, &rule);
            assert!((got - 1.0 / deg as f64).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn two_point_rule() {
        let (x, w) = gauss_legendre(2);
        assert!((x[0].abs() - 1.0 / 3f64.sqrt()).abs() < 1e-15, "{x:?}");
        assert!((w[0] - 1.0).abs() < 1e-15);
    }
}
