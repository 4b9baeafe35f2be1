//! Traversal micro-benchmark: walk a row-major array of `f64` in path order.

use std::collections::TryReserveError;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfc3::CurvePath;

pub const SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kernel {
    /// Running sum of the visited values.
    Reduce,
    /// Sum of the available face neighbours of each visited cell.
    Stencil,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub checksum: f64,
    pub visits_per_repeat: u64,
    pub timings: Vec<Duration>,
}

impl BenchReport {
    pub fn min_time(&self) -> Option<Duration> {
        self.timings.iter().min().copied()
    }
}

/// `len` values in `[0, 1)` from a ChaCha8 stream seeded with [`SEED`].
pub fn init_values(len: usize) -> Result<Vec<f64>, TryReserveError> {
    let mut values = Vec::new();
    values.try_reserve_exact(len)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    values.extend((0..len).map(|_| rng.gen::<f64>()));
    Ok(values)
}

/// Runs `kernel` over `path` `repeat` times. The array is stored row-major;
/// cells are visited in path order. The path must be a permutation.
pub fn run_bench(
    path: &CurvePath,
    kernel: Kernel,
    repeat: u32,
) -> Result<BenchReport, TryReserveError> {
    let dims = path.dims();
    let values = init_values(dims.total() as usize)?;
    let (p, n, m) = (
        dims.slabs() as usize,
        dims.rows() as usize,
        dims.cols() as usize,
    );
    let mut order = Vec::new();
    order.try_reserve_exact(path.len())?;
    order.extend(
        path.cells()
            .iter()
            .map(|c| (c.s as usize * n + c.r as usize) * m + c.c as usize),
    );

    let mut timings = Vec::with_capacity(repeat as usize);
    let mut checksum = 0.0;
    let mut visits = 0;
    for _ in 0..repeat {
        let start = Instant::now();
        let (sum, count) = match kernel {
            Kernel::Reduce => reduce(&values, &order),
            Kernel::Stencil => stencil(&values, &order, p, n, m),
        };
        timings.push(start.elapsed());
        checksum = black_box(sum);
        visits = count;
    }
    Ok(BenchReport {
        checksum,
        visits_per_repeat: visits,
        timings,
    })
}

fn reduce(values: &[f64], order: &[usize]) -> (f64, u64) {
    let mut sum = 0.0;
    for &i in order {
        sum += values[i];
    }
    (sum, order.len() as u64)
}

fn stencil(values: &[f64], order: &[usize], p: usize, n: usize, m: usize) -> (f64, u64) {
    let plane = n * m;
    let mut sum = 0.0;
    let mut visits = 0;
    for &i in order {
        let (s, r, c) = (i / plane, (i / m) % n, i % m);
        let mut acc = 0.0;
        if c > 0 {
            acc += values[i - 1];
        }
        if c + 1 < m {
            acc += values[i + 1];
        }
        if r > 0 {
            acc += values[i - m];
        }
        if r + 1 < n {
            acc += values[i + m];
        }
        if s > 0 {
            acc += values[i - plane];
        }
        if s + 1 < p {
            acc += values[i + plane];
        }
        sum += acc;
        visits += 1;
    }
    (sum, visits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sfc3::{row_major_path, Dims3};

    #[test]
    fn values_are_seeded() {
        let a = init_values(16).unwrap();
        assert_eq!(a, init_values(16).unwrap());
        assert!(a.iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn reduce_sums_every_value() {
        let d = Dims3::new(3, 4, 5).unwrap();
        let report = run_bench(&row_major_path(d), Kernel::Reduce, 2).unwrap();
        let expected: f64 = init_values(60).unwrap().iter().sum();
        assert_eq!(report.checksum, expected);
        assert_eq!(report.visits_per_repeat, 60);
        assert_eq!(report.timings.len(), 2);
    }

    #[test]
    fn stencil_counts_each_neighbour_once_per_edge_end() {
        // Summing neighbour values over all cells counts each value once per
        // neighbour it has.
        let d = Dims3::new(3, 2, 4).unwrap();
        let values = init_values(24).unwrap();
        let mut expected = 0.0;
        for cell in row_major_path(d).cells() {
            let degree = [
                cell.s > 0,
                cell.s < 2,
                cell.r > 0,
                cell.r < 1,
                cell.c > 0,
                cell.c < 3,
            ]
            .iter()
            .filter(|&&b| b)
            .count();
            let i = sfc3::linear_index(*cell, d).unwrap() as usize;
            expected += values[i] * degree as f64;
        }
        let report = run_bench(&row_major_path(d), Kernel::Stencil, 1).unwrap();
        assert!((report.checksum - expected).abs() < 1e-9);
        assert_eq!(report.visits_per_repeat, 24);
    }
}
