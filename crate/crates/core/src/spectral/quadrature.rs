use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

pub const GL_ORDER: usize = 32;
const MAX_PANELS: usize = 1 << 12;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
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
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

fn composite(f: &impl Fn(f64) -> Complex64, panels: usize) -> Complex64 {
    let (nodes, weights) = rule();
    let h = 1.0 / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(weights) {
            total += f(mid + 0.5 * h * x) * *w;
        }
    }
    total * (0.5 * h)
}

/// `int_0^1 f`, doubling the panel count until two successive estimates
/// differ by less than `tol / 100`.
pub fn integrate_unit(f: impl Fn(f64) -> Complex64, tol: f64) -> Complex64 {
    let mut panels = 1;
    let mut prev = composite(&f, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let next = composite(&f, panels);
        if (next - prev).norm() < tol / 100.0 {
            return next;
        }
        prev = next;
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        let (x, w) = gauss_legendre(GL_ORDER);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        for i in 0..GL_ORDER {
            assert!((x[i] + x[GL_ORDER - 1 - i]).abs() < 1e-15);
        }
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_63() {
        let (x, w) = gauss_legendre(GL_ORDER);
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(62)).sum();
        assert!((integral - 2.0 / 63.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integral() {
        // int_0^1 exp(2 pi i 7.3 t) dt
        let a = 2.0 * PI * 7.3;
        let got = integrate_unit(|t| Complex64::from_polar(1.0, a * t), 1e-12);
        let want = (Complex64::from_polar(1.0, a) - 1.0) / Complex64::new(0.0, a);
        assert!((got - want).norm() < 1e-13);
    }
}
