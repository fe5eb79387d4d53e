//! Standard global-optimization test functions, in original coordinates.

use std::f64::consts::{E, PI};

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `sum_i i * x_i^2` with 1-based `i`.
pub fn sum_squares(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum()
}

/// Ackley with `a = 20`, `b = 0.2`, `c = 2 pi`.
pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cos = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cos.exp() + 20.0 + E
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

/// `418.9829 d - sum_i x_i sin(sqrt|x_i|)`.
pub fn schwefel(x: &[f64]) -> f64 {
    418.9829 * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn levy(x: &[f64]) -> f64 {
    let w = |v: f64| 1.0 + (v - 1.0) / 4.0;
    let d = x.len();
    let w1 = w(x[0]);
    let wd = w(x[d - 1]);
    let middle: f64 = x[..d - 1]
        .iter()
        .map(|&v| {
            let wi = w(v);
            (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2))
        })
        .sum();
    (PI * w1).sin().powi(2) + middle + (wd - 1.0).powi(2) * (1.0 + (2.0 * PI * wd).sin().powi(2))
}

pub fn styblinski_tang(x: &[f64]) -> f64 {
    0.5 * x
        .iter()
        .map(|v| v.powi(4) - 16.0 * v * v + 5.0 * v)
        .sum::<f64>()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

pub fn zakharov(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let lin: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    sq + lin.powi(2) + lin.powi(4)
}

pub fn rotated_hyper_ellipsoid(x: &[f64]) -> f64 {
    let mut partial = 0.0;
    let mut total = 0.0;
    for v in x {
        partial += v * v;
        total += partial;
    }
    total
}

pub fn drop_wave(x: &[f64]) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1];
    -(1.0 + (12.0 * r2.sqrt()).cos()) / (0.5 * r2 + 2.0)
}

pub fn eggholder(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    -(x2 + 47.0) * (x2 + x1 / 2.0 + 47.0).abs().sqrt().sin()
        - x1 * (x1 - (x2 + 47.0)).abs().sqrt().sin()
}

pub fn holder_table(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let r = (x1 * x1 + x2 * x2).sqrt();
    -(x1.sin() * x2.cos() * (1.0 - r / PI).abs().exp()).abs()
}

pub fn cross_in_tray(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let r = (x1 * x1 + x2 * x2).sqrt();
    let inner = (x1.sin() * x2.sin() * (100.0 - r / PI).abs().exp()).abs() + 1.0;
    -1e-4 * inner.powf(0.1)
}

pub fn shubert(x: &[f64]) -> f64 {
    let term = |v: f64| -> f64 {
        (1..=5)
            .map(|i| {
                let i = i as f64;
                i * ((i + 1.0) * v + i).cos()
            })
            .sum()
    };
    term(x[0]) * term(x[1])
}

pub fn six_hump_camel(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    (4.0 - 2.1 * x1 * x1 + x1.powi(4) / 3.0) * x1 * x1 + x1 * x2 + (-4.0 + 4.0 * x2 * x2) * x2 * x2
}

pub fn three_hump_camel(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    2.0 * x1 * x1 - 1.05 * x1.powi(4) + x1.powi(6) / 6.0 + x1 * x2 + x2 * x2
}

pub fn matyas(x: &[f64]) -> f64 {
    0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1]
}

pub fn bohachevsky1(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    x1 * x1 + 2.0 * x2 * x2 - 0.3 * (3.0 * PI * x1).cos() - 0.4 * (4.0 * PI * x2).cos() + 0.7
}

pub fn easom(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    -x1.cos() * x2.cos() * (-(x1 - PI).powi(2) - (x2 - PI).powi(2)).exp()
}

pub fn branin(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let b = 5.1 / (4.0 * PI * PI);
    let c = 5.0 / PI;
    let t = 1.0 / (8.0 * PI);
    (x2 - b * x1 * x1 + c * x1 - 6.0).powi(2) + 10.0 * (1.0 - t) * x1.cos() + 10.0
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let a = 1.0
        + (x1 + x2 + 1.0).powi(2)
            * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
    let b = 30.0
        + (2.0 * x1 - 3.0 * x2).powi(2)
            * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
    a * b
}

pub fn schaffer_n2(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let num = (x1 * x1 - x2 * x2).sin().powi(2) - 0.5;
    let den = (1.0 + 0.001 * (x1 * x1 + x2 * x2)).powi(2);
    0.5 + num / den
}

pub fn levy_n13(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    (3.0 * PI * x1).sin().powi(2)
        + (x1 - 1.0).powi(2) * (1.0 + (3.0 * PI * x2).sin().powi(2))
        + (x2 - 1.0).powi(2) * (1.0 + (2.0 * PI * x2).sin().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_values_away_from_optimum() {
        // Hand-checkable points.
        assert_eq!(sphere(&[1.0, 2.0, 3.0]), 14.0);
        assert_eq!(sum_squares(&[1.0, 2.0, 3.0]), 1.0 + 8.0 + 27.0);
        assert_eq!(rotated_hyper_ellipsoid(&[1.0, 2.0]), 1.0 + 5.0);
        assert_eq!(rosenbrock(&[0.0, 0.0]), 1.0);
        // cos(2 pi) = 1 at integer points
        assert!((rastrigin(&[1.0, 1.0]) - 2.0).abs() < 1e-12);
        assert!((goldstein_price(&[0.0, -1.0]) - 3.0).abs() < 1e-12);
        assert!((easom(&[PI, PI]) + 1.0).abs() < 1e-15);
        assert!((drop_wave(&[0.0, 0.0]) + 1.0).abs() < 1e-15);
        assert!((branin(&[PI, 2.275]) - 5.0 / (4.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn schwefel_residual_per_coordinate() {
        // 418.9829 is a rounded constant: the minimum is slightly positive.
        let v = schwefel(&[420.9687; 10]);
        assert!(v.abs() <= 1e-3);
        assert!(v > 0.0);
    }
}
