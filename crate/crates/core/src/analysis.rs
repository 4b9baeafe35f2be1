//! Path verification and locality measurement.
//!
//! Locality is measured over the 6-neighbourhood edges of the grid: for each
//! pair of face-adjacent cells the absolute difference of their curve ranks is
//! accumulated. All sums are integers, so results do not depend on the order
//! in which edges are visited.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::model::{linear_index_unchecked, Coord3, CurvePath, Dims3, RankTable};
use crate::ordering::OrderingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    /// Path length equals the cell count of the volume.
    pub complete: bool,
    /// Every cell lies inside the volume.
    pub in_bounds: bool,
    pub length: u64,
    pub out_of_bounds_count: u64,
    /// Extra occurrences of in-bounds cells already seen.
    pub duplicate_count: u64,
    /// In-bounds cells never visited.
    pub missing_count: u64,
}

impl VerifyReport {
    pub fn is_permutation(&self) -> bool {
        self.complete && self.in_bounds && self.duplicate_count == 0 && self.missing_count == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "permutation={} complete={} in_bounds={} length={} out_of_bounds={} duplicates={} missing={}",
            self.is_permutation(),
            self.complete,
            self.in_bounds,
            self.length,
            self.out_of_bounds_count,
            self.duplicate_count,
            self.missing_count
        )
    }
}

/// Describes how far `path` is from a permutation of its volume.
pub fn verify_path(path: &CurvePath) -> VerifyReport {
    let dims = path.dims();
    let total = dims.total();
    let mut seen = vec![false; total as usize];
    let mut out_of_bounds = 0;
    let mut duplicates = 0;
    let mut distinct = 0;
    for &cell in path.cells() {
        if !dims.contains(cell) {
            out_of_bounds += 1;
            continue;
        }
        let slot = &mut seen[linear_index_unchecked(cell, dims) as usize];
        if *slot {
            duplicates += 1;
        } else {
            *slot = true;
            distinct += 1;
        }
    }
    VerifyReport {
        complete: path.len() as u64 == total,
        in_bounds: out_of_bounds == 0,
        length: path.len() as u64,
        out_of_bounds_count: out_of_bounds,
        duplicate_count: duplicates,
        missing_count: total - distinct,
    }
}

/// Counts of L1 distances between consecutive cells.
pub fn step_histogram(path: &CurvePath) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for (a, b) in path.steps() {
        *hist.entry(a.l1_distance(b)).or_insert(0) += 1;
    }
    hist
}

/// Renders a histogram as `{1:6,3:1}`.
pub fn format_histogram(hist: &BTreeMap<u64, u64>) -> String {
    let body: Vec<String> = hist.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", body.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityReport {
    pub step_histogram: BTreeMap<u64, u64>,
    /// Sum of rank gaps over all grid edges.
    pub gap_sum: u64,
    pub max_adjacent_rank_gap: u64,
    pub edges_counted: u64,
}

impl LocalityReport {
    /// Mean rank gap as a reduced fraction; zero for volumes without edges.
    pub fn mean_adjacent_rank_gap(&self) -> Ratio<u64> {
        if self.edges_counted == 0 {
            return Ratio::from_integer(0);
        }
        Ratio::new(self.gap_sum, self.edges_counted)
    }

    /// The mean rounded half-up to six decimal places.
    pub fn mean_decimal(&self) -> String {
        let mean = self.mean_adjacent_rank_gap();
        let (num, den) = (*mean.numer() as u128, *mean.denom() as u128);
        let scaled = (num * 2_000_000 + den) / (2 * den);
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }

    fn merge(&mut self, other: &LocalityReport) {
        self.gap_sum += other.gap_sum;
        self.edges_counted += other.edges_counted;
        self.max_adjacent_rank_gap = self.max_adjacent_rank_gap.max(other.max_adjacent_rank_gap);
    }
}

/// Gap statistics for the edges leaving the slabs in `slabs` toward
/// higher coordinates.
fn edge_gaps(table: &RankTable, slabs: std::ops::Range<u32>) -> LocalityReport {
    let dims = table.dims();
    let ranks = table.as_slice();
    let [p, n, m] = dims.as_array();
    let mut acc = LocalityReport {
        step_histogram: BTreeMap::new(),
        gap_sum: 0,
        max_adjacent_rank_gap: 0,
        edges_counted: 0,
    };
    let mut edge = |a: u64, b: u64| {
        let gap = ranks[a as usize].abs_diff(ranks[b as usize]);
        acc.gap_sum += gap;
        acc.max_adjacent_rank_gap = acc.max_adjacent_rank_gap.max(gap);
        acc.edges_counted += 1;
    };
    for s in slabs {
        for r in 0..n {
            for c in 0..m {
                let here = linear_index_unchecked(Coord3::new(s, r, c), dims);
                if c + 1 < m {
                    edge(here, here + 1);
                }
                if r + 1 < n {
                    edge(here, here + m as u64);
                }
                if s + 1 < p {
                    edge(here, here + m as u64 * n as u64);
                }
            }
        }
    }
    acc
}

/// Rank-gap statistics over every grid edge. The path must be a permutation.
pub fn adjacency_locality(path: &CurvePath) -> Result<LocalityReport> {
    if !verify_path(path).is_permutation() {
        return Err(Error::VerificationRequired);
    }
    let table = path.rank_table()?;
    let p = path.dims().slabs();
    // Partition by slab bands; integer sums make the merge order irrelevant.
    let band = p.div_ceil(4).max(1);
    let mut report = LocalityReport {
        step_histogram: step_histogram(path),
        gap_sum: 0,
        max_adjacent_rank_gap: 0,
        edges_counted: 0,
    };
    let mut start = 0;
    while start < p {
        let end = (start + band).min(p);
        report.merge(&edge_gaps(&table, start..end));
        start = end;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub spec: OrderingSpec,
    pub report: LocalityReport,
}

/// Locality of several orderings over the same volume.
pub fn compare_orderings(dims: Dims3, specs: &[OrderingSpec]) -> Result<Vec<ComparisonRow>> {
    specs
        .iter()
        .map(|spec| {
            let path = spec.generate(dims)?;
            Ok(ComparisonRow {
                spec: *spec,
                report: adjacency_locality(&path)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_general;
    use crate::model::row_major_path;
    use crate::ordering::BaseOrder;

    fn dims(p: u32, n: u32, m: u32) -> Dims3 {
        Dims3::new(p, n, m).unwrap()
    }

    /// Brute force over all cell pairs; independent of the edge walk above.
    fn brute_force_gaps(path: &CurvePath) -> (u64, u64, u64) {
        let cells = path.cells();
        let (mut sum, mut max, mut edges) = (0, 0, 0);
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if cells[i].l1_distance(cells[j]) == 1 {
                    let gap = (j - i) as u64;
                    sum += gap;
                    max = max.max(gap);
                    edges += 1;
                }
            }
        }
        (sum, max, edges)
    }

    #[test]
    fn verify_examples() {
        let d = dims(2, 2, 2);
        let good = verify_path(&row_major_path(d));
        assert!(good.is_permutation());
        assert_eq!((good.duplicate_count, good.missing_count), (0, 0));

        let mut cells = row_major_path(d).into_cells();
        cells.pop();
        let short = verify_path(&CurvePath::new(d, cells.clone()));
        assert!(!short.complete);
        assert_eq!(short.missing_count, 1);

        cells.push(Coord3::ORIGIN);
        let dup = verify_path(&CurvePath::new(d, cells));
        assert!(dup.complete);
        assert_eq!((dup.duplicate_count, dup.missing_count), (1, 1));
        assert!(!dup.is_permutation());
    }

    #[test]
    fn verify_reports_out_of_bounds() {
        let cells = row_major_path(dims(3, 2, 2)).into_cells();
        let report = verify_path(&CurvePath::new(dims(2, 2, 2), cells));
        assert!(!report.in_bounds);
        assert_eq!(report.out_of_bounds_count, 4);
        assert_eq!(report.missing_count, 0);
        assert!(!report.is_permutation());
    }

    #[test]
    fn histogram_examples() {
        let hist = |p: &CurvePath| step_histogram(p);
        assert_eq!(
            hist(&row_major_path(dims(1, 1, 4))),
            BTreeMap::from([(1, 3)])
        );
        // four in-row moves, two row wraps of length 2, one slab wrap of length 3
        assert_eq!(
            hist(&row_major_path(dims(2, 2, 2))),
            BTreeMap::from([(1, 4), (2, 2), (3, 1)])
        );
        assert_eq!(
            hist(&hilbert_general(dims(4, 4, 4), false).unwrap()),
            BTreeMap::from([(1, 63)])
        );
        assert_eq!(
            format_histogram(&BTreeMap::from([(1, 6), (3, 1)])),
            "{1:6,3:1}"
        );
    }

    #[test]
    fn locality_examples() {
        let r = adjacency_locality(&row_major_path(dims(1, 1, 2))).unwrap();
        assert_eq!(
            (
                r.mean_adjacent_rank_gap(),
                r.max_adjacent_rank_gap,
                r.edges_counted
            ),
            (Ratio::from_integer(1), 1, 1)
        );

        let r = adjacency_locality(&row_major_path(dims(2, 2, 2))).unwrap();
        assert_eq!(r.edges_counted, 12);
        assert_eq!(r.mean_adjacent_rank_gap(), Ratio::new(7, 3));
        assert_eq!(r.mean_decimal(), "2.333333");
        assert_eq!(r.max_adjacent_rank_gap, 4);

        let h = hilbert_general(dims(2, 2, 2), false).unwrap();
        let r = adjacency_locality(&h).unwrap();
        let (sum, max, edges) = brute_force_gaps(&h);
        assert_eq!(
            (r.gap_sum, r.max_adjacent_rank_gap, r.edges_counted),
            (sum, max, edges)
        );
        assert!(r.max_adjacent_rank_gap <= 7);
    }

    #[test]
    fn single_cell_volume_has_no_edges() {
        let r = adjacency_locality(&row_major_path(dims(1, 1, 1))).unwrap();
        assert_eq!(r.edges_counted, 0);
        assert_eq!(r.mean_decimal(), "0.000000");
    }

    #[test]
    fn locality_matches_brute_force() {
        for d in [dims(3, 4, 5), dims(6, 4, 4), dims(7, 1, 3), dims(9, 9, 1)] {
            for order in [
                BaseOrder::RowMajor,
                BaseOrder::Morton,
                BaseOrder::Hilbert { allow_odd: true },
            ] {
                let path = order.generate(d).unwrap();
                let r = adjacency_locality(&path).unwrap();
                assert_eq!(
                    (r.gap_sum, r.max_adjacent_rank_gap, r.edges_counted),
                    brute_force_gaps(&path)
                );
                assert_eq!(r.edges_counted, d.edge_count());
                assert_eq!(r.step_histogram.values().sum::<u64>(), d.total() - 1);
            }
        }
    }

    #[test]
    fn locality_requires_permutation() {
        let d = dims(2, 2, 2);
        let mut cells = row_major_path(d).into_cells();
        cells[7] = Coord3::ORIGIN;
        assert_eq!(
            adjacency_locality(&CurvePath::new(d, cells)),
            Err(Error::VerificationRequired)
        );
    }

    #[test]
    fn rounding_half_up() {
        let r = LocalityReport {
            step_histogram: BTreeMap::new(),
            gap_sum: 2,
            max_adjacent_rank_gap: 0,
            edges_counted: 3,
        };
        assert_eq!(r.mean_decimal(), "0.666667");
    }

    #[test]
    fn comparison_examples() {
        let d = dims(2, 2, 2);
        let rows = compare_orderings(d, &[BaseOrder::RowMajor.into()]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(
            rows[0].report,
            adjacency_locality(&row_major_path(d)).unwrap()
        );

        let rows = compare_orderings(
            dims(4, 4, 4),
            &[BaseOrder::RowMajor.into(), BaseOrder::Morton.into()],
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert_eq!(row.report.step_histogram.values().sum::<u64>(), 63);
        }
    }
}
