//! Gauss–Legendre quadrature along straight segments in the complex plane.

use std::sync::OnceLock;

use num_complex::Complex64;

const NODES: usize = 16;
const MAX_DEPTH: u32 = 24;

struct Rule {
    nodes: [f64; NODES],
    weights: [f64; NODES],
}

/// Nodes and weights on [-1, 1], computed once by Newton iteration on P_16.
fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut nodes = [0.0; NODES];
        let mut weights = [0.0; NODES];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
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
        Rule { nodes, weights }
    })
}

/// One 16-point rule on the segment [a, b].
pub fn gauss_legendre_segment<F>(f: &F, a: Complex64, b: Complex64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let r = rule();
    let half = (b - a) * 0.5;
    let mid = (a + b) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        acc += f(mid + half * *x) * *w;
    }
    acc * half
}

fn adaptive<F>(f: &F, a: Complex64, b: Complex64, whole: Complex64, tol: f64, depth: u32) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let m = (a + b) * 0.5;
    let left = gauss_legendre_segment(f, a, m);
    let right = gauss_legendre_segment(f, m, b);
    let split = left + right;
    if depth >= MAX_DEPTH || (split - whole).norm() <= tol {
        return split;
    }
    adaptive(f, a, m, left, tol * 0.5, depth + 1) + adaptive(f, m, b, right, tol * 0.5, depth + 1)
}

/// Integral of `f` along [a, b], starting from `segments` equal pieces and
/// bisecting any piece whose 16-point estimate moves by more than `tol`.
pub fn integrate_segment<F>(f: &F, a: Complex64, b: Complex64, segments: usize, tol: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let segments = segments.max(1);
    let step = (b - a) / segments as f64;
    let piece_tol = tol / segments as f64;
    (0..segments)
        .map(|k| {
            let lo = a + step * k as f64;
            let hi = lo + step;
            let whole = gauss_legendre_segment(f, lo, hi);
            adaptive(f, lo, hi, whole, piece_tol, 0)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        let r = rule();
        let sum: f64 = r.weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        for i in 0..NODES {
            assert!((r.nodes[i] + r.nodes[NODES - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_for_degree_31_polynomials() {
        let f = |z: Complex64| z.powi(31) + z.powi(4);
        let got = gauss_legendre_segment(&f, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((got.re - (1.0 / 32.0 + 0.2)).abs() < 1e-15);
    }

    #[test]
    fn complex_path_log() {
        // int_0^z dt/(1+t) = log(1+z)
        let z = Complex64::from_polar(0.95, 2.5);
        let f = |t: Complex64| (Complex64::new(1.0, 0.0) + t).inv();
        let got = integrate_segment(&f, Complex64::new(0.0, 0.0), z, 2, 1e-14);
        assert!((got - (Complex64::new(1.0, 0.0) + z).ln()).norm() < 1e-12);
    }
}
