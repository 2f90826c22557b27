//! Standard test functions on `[-5, 5]^n`, shifted so the optimum is not at
//! the centre of the box.

use std::f64::consts::PI;

use super::Bounds;

pub const BENCHMARK_BOX: (f64, f64) = (-5.0, 5.0);

/// Location of the minimum of [`sphere`] and [`rastrigin`] in coordinate `i`.
pub fn shift(i: usize) -> f64 {
    1.0 + 0.37 * (i % 4) as f64
}

pub fn benchmark_bounds(dim: usize) -> Bounds {
    Bounds::uniform(dim, BENCHMARK_BOX.0, BENCHMARK_BOX.1).expect("valid box")
}

/// `sum (x_i - s_i)^2`, minimum 0.
pub fn sphere(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| (v - shift(i)).powi(2)).sum()
}

/// `10 n + sum (y_i^2 - 10 cos(2 pi y_i))` with `y = x - s`, minimum 0.
pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let y = v - shift(i);
            y * y - 10.0 * (2.0 * PI * y).cos() + 10.0
        })
        .sum()
}

/// Rosenbrock's valley, minimum 0 at `(1, ..., 1)`.
pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minima() {
        let opt: Vec<f64> = (0..10).map(shift).collect();
        assert_eq!(sphere(&opt), 0.0);
        assert!(rastrigin(&opt).abs() < 1e-12);
        assert_eq!(rosenbrock(&[1.0; 5]), 0.0);
        assert!(benchmark_bounds(10).contains(&opt));
    }
}
