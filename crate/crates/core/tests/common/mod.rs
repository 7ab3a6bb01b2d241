#![allow(dead_code)]

use flatnorm::measure::DiscreteSignedMeasure;
use flatnorm::metric::{MetricSpace, Point};
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shortest-path closure of a symmetric matrix with positive off-diagonal entries.
pub fn closure(mut d: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn random_metric(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> MetricSpace {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.random_range(lo..hi);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    MetricSpace::from_distance_matrix(closure(d)).unwrap()
}

/// Signed weights in `[-w, w]` on every point of a matrix space.
pub fn random_matrix_measure(
    rng: &mut ChaCha8Rng,
    space: &MetricSpace,
    w: f64,
) -> DiscreteSignedMeasure {
    let n = space.matrix_size().unwrap();
    let atoms = (0..n)
        .map(|i| (Point::Index(i), rng.random_range(-w..w)))
        .collect();
    DiscreteSignedMeasure::new(space, atoms).unwrap()
}

pub fn line_measure(
    rng: &mut ChaCha8Rng,
    atoms: usize,
    span: f64,
    positive: bool,
) -> DiscreteSignedMeasure {
    let r = MetricSpace::real_line();
    let pts: Vec<(f64, f64)> = (0..atoms)
        .map(|_| {
            let x = rng.random_range(-span..span);
            let w = if positive {
                rng.random_range(0.01..2.0)
            } else {
                rng.random_range(-2.0..2.0)
            };
            (x, w)
        })
        .collect();
    DiscreteSignedMeasure::on_line(&r, &pts).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Strategy for atoms on the real line.
pub fn line_atoms(max: usize, positive: bool) -> impl Strategy<Value = Vec<(f64, f64)>> {
    let w = if positive { 0.01..2.0 } else { -2.0..2.0 };
    prop::collection::vec((-10.0..10.0f64, w), 1..=max)
}

pub fn on_line(atoms: &[(f64, f64)]) -> DiscreteSignedMeasure {
    DiscreteSignedMeasure::on_line(&MetricSpace::real_line(), atoms).unwrap()
}

/// Strategy for a symmetric matrix with entries in `[0.05, 4)` closed under shortest paths.
pub fn metric_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2..=max).prop_flat_map(|n| {
        prop::collection::vec(0.05..4.0f64, n * (n - 1) / 2).prop_map(move |v| {
            let mut d = vec![vec![0.0; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    d[i][j] = v[k];
                    d[j][i] = v[k];
                    k += 1;
                }
            }
            closure(d)
        })
    })
}
