//! Volume extents, cell coordinates and curve paths.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Extents of a data volume: `P` slabs, `N` rows and `M` columns.
///
/// All extents are at least 1 and the cell count fits in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims3 {
    slabs: u32,
    rows: u32,
    cols: u32,
}

impl Dims3 {
    pub fn new(slabs: u32, rows: u32, cols: u32) -> Result<Self> {
        if slabs == 0 || rows == 0 || cols == 0 {
            return Err(Error::ZeroExtent(slabs, rows, cols));
        }
        (slabs as u64)
            .checked_mul(rows as u64)
            .and_then(|v| v.checked_mul(cols as u64))
            .ok_or(Error::VolumeTooLarge(slabs, rows, cols))?;
        Ok(Self { slabs, rows, cols })
    }

    pub fn slabs(&self) -> u32 {
        self.slabs
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    /// Extents as `[P, N, M]`.
    pub fn as_array(&self) -> [u32; 3] {
        [self.slabs, self.rows, self.cols]
    }

    pub fn total(&self) -> u64 {
        self.slabs as u64 * self.rows as u64 * self.cols as u64
    }

    pub fn contains(&self, coord: Coord3) -> bool {
        coord.s < self.slabs && coord.r < self.rows && coord.c < self.cols
    }

    /// Number of 6-neighbourhood edges of the grid.
    pub fn edge_count(&self) -> u64 {
        let (p, n, m) = (self.slabs as u64, self.rows as u64, self.cols as u64);
        p * n * (m - 1) + p * (n - 1) * m + (p - 1) * n * m
    }
}

impl fmt::Display for Dims3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.slabs, self.rows, self.cols)
    }
}

impl FromStr for Dims3 {
    type Err = Error;

    /// Parses `PxNxM`, e.g. `6x4x4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("expected extents as PxNxM, got {s:?}"));
        let parts: Vec<&str> = s.trim().split(['x', 'X']).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut vals = [0u32; 3];
        for (v, p) in vals.iter_mut().zip(&parts) {
            *v = p.trim().parse().map_err(|_| bad())?;
        }
        Dims3::new(vals[0], vals[1], vals[2])
    }
}

/// Position of one cell: slab `s`, row `r`, column `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coord3 {
    pub s: u32,
    pub r: u32,
    pub c: u32,
}

impl Coord3 {
    pub const ORIGIN: Coord3 = Coord3 { s: 0, r: 0, c: 0 };

    pub const fn new(s: u32, r: u32, c: u32) -> Self {
        Self { s, r, c }
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.s, self.r, self.c]
    }

    pub fn from_array([s, r, c]: [u32; 3]) -> Self {
        Self { s, r, c }
    }

    pub fn offset(&self, origin: Coord3) -> Coord3 {
        Coord3::new(self.s + origin.s, self.r + origin.r, self.c + origin.c)
    }

    /// Componentwise difference `other - self`.
    pub fn delta(&self, other: Coord3) -> [i64; 3] {
        [
            other.s as i64 - self.s as i64,
            other.r as i64 - self.r as i64,
            other.c as i64 - self.c as i64,
        ]
    }

    pub fn l1_distance(&self, other: Coord3) -> u64 {
        self.delta(other).iter().map(|d| d.unsigned_abs()).sum()
    }
}

impl fmt::Display for Coord3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.s, self.r, self.c)
    }
}

/// One of the six axis-aligned moves between face-adjacent cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitStep {
    SlabForward,
    SlabBack,
    RowForward,
    RowBack,
    ColForward,
    ColBack,
}

impl UnitStep {
    pub const ALL: [UnitStep; 6] = [
        UnitStep::SlabForward,
        UnitStep::SlabBack,
        UnitStep::RowForward,
        UnitStep::RowBack,
        UnitStep::ColForward,
        UnitStep::ColBack,
    ];

    /// The move as an `(s, r, c)` vector.
    pub fn vector(self) -> [i64; 3] {
        match self {
            UnitStep::SlabForward => [1, 0, 0],
            UnitStep::SlabBack => [-1, 0, 0],
            UnitStep::RowForward => [0, 1, 0],
            UnitStep::RowBack => [0, -1, 0],
            UnitStep::ColForward => [0, 0, 1],
            UnitStep::ColBack => [0, 0, -1],
        }
    }

    pub fn from_vector(v: [i64; 3]) -> Option<UnitStep> {
        UnitStep::ALL.into_iter().find(|step| step.vector() == v)
    }

    /// The step leading from `from` to `to`, if they are face-adjacent.
    pub fn between(from: Coord3, to: Coord3) -> Option<UnitStep> {
        UnitStep::from_vector(from.delta(to))
    }
}

/// Row-major rank of `coord`: `s·N·M + r·M + c`.
pub fn linear_index(coord: Coord3, dims: Dims3) -> Result<u64> {
    if !dims.contains(coord) {
        return Err(Error::OutOfBounds { coord, dims });
    }
    Ok(linear_index_unchecked(coord, dims))
}

#[inline]
pub(crate) fn linear_index_unchecked(coord: Coord3, dims: Dims3) -> u64 {
    (coord.s as u64 * dims.rows as u64 + coord.r as u64) * dims.cols as u64 + coord.c as u64
}

/// Inverse of [`linear_index`].
pub fn coord_of(rank: u64, dims: Dims3) -> Result<Coord3> {
    let total = dims.total();
    if rank >= total {
        return Err(Error::RankOutOfRange { rank, total });
    }
    let cols = dims.cols as u64;
    let rows = dims.rows as u64;
    Ok(Coord3 {
        c: (rank % cols) as u32,
        r: ((rank / cols) % rows) as u32,
        s: (rank / (cols * rows)) as u32,
    })
}

/// An ordering of a volume's cells; the position in `cells` is the rank.
///
/// Construction does not check the cells. Paths produced by this crate's
/// generators are complete permutations; paths read from elsewhere should go
/// through [`crate::analysis::verify_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePath {
    dims: Dims3,
    cells: Vec<Coord3>,
}

impl CurvePath {
    pub fn new(dims: Dims3, cells: Vec<Coord3>) -> Self {
        Self { dims, cells }
    }

    pub fn dims(&self) -> Dims3 {
        self.dims
    }

    pub fn cells(&self) -> &[Coord3] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Coord3> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Consecutive cell pairs along the path.
    pub fn steps(&self) -> impl Iterator<Item = (Coord3, Coord3)> + '_ {
        self.cells.windows(2).map(|w| (w[0], w[1]))
    }

    /// Builds the coord → rank map. Fails unless the path is a permutation.
    pub fn rank_table(&self) -> Result<RankTable> {
        let total = self.dims.total();
        if self.cells.len() as u64 != total {
            return Err(Error::VerificationRequired);
        }
        let mut ranks = vec![u64::MAX; total as usize];
        for (rank, &cell) in self.cells.iter().enumerate() {
            if !self.dims.contains(cell) {
                return Err(Error::VerificationRequired);
            }
            let slot = &mut ranks[linear_index_unchecked(cell, self.dims) as usize];
            if *slot != u64::MAX {
                return Err(Error::VerificationRequired);
            }
            *slot = rank as u64;
        }
        Ok(RankTable {
            dims: self.dims,
            ranks,
        })
    }
}

/// Forward map from cell to curve rank, stored in row-major cell order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    dims: Dims3,
    ranks: Vec<u64>,
}

impl RankTable {
    pub fn dims(&self) -> Dims3 {
        self.dims
    }

    pub fn rank(&self, coord: Coord3) -> Result<u64> {
        let idx = linear_index(coord, self.dims)?;
        Ok(self.ranks[idx as usize])
    }

    /// Ranks indexed by row-major position.
    pub fn as_slice(&self) -> &[u64] {
        &self.ranks
    }
}

/// Row-major ordering: column fastest, then row, then slab.
pub fn row_major_path(dims: Dims3) -> CurvePath {
    let mut cells = Vec::with_capacity(dims.total() as usize);
    for s in 0..dims.slabs {
        for r in 0..dims.rows {
            for c in 0..dims.cols {
                cells.push(Coord3 { s, r, c });
            }
        }
    }
    CurvePath::new(dims, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(p: u32, n: u32, m: u32) -> Dims3 {
        Dims3::new(p, n, m).unwrap()
    }

    #[test]
    fn linear_index_examples() {
        assert_eq!(linear_index(Coord3::new(0, 0, 0), dims(2, 2, 2)), Ok(0));
        assert_eq!(linear_index(Coord3::new(1, 1, 1), dims(2, 2, 2)), Ok(7));
        assert_eq!(linear_index(Coord3::new(1, 2, 3), dims(4, 3, 5)), Ok(28));
    }

    #[test]
    fn linear_index_matches_nested_loop_enumeration() {
        let d = dims(4, 3, 5);
        let mut k = 0u64;
        for s in 0..4 {
            for r in 0..3 {
                for c in 0..5 {
                    assert_eq!(linear_index(Coord3::new(s, r, c), d), Ok(k));
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn coord_of_examples() {
        assert_eq!(coord_of(0, dims(2, 2, 2)), Ok(Coord3::new(0, 0, 0)));
        assert_eq!(coord_of(7, dims(2, 2, 2)), Ok(Coord3::new(1, 1, 1)));
        assert_eq!(coord_of(28, dims(4, 3, 5)), Ok(Coord3::new(1, 2, 3)));
    }

    #[test]
    fn bounds_errors() {
        assert!(matches!(
            linear_index(Coord3::new(0, 3, 0), dims(4, 3, 5)),
            Err(Error::OutOfBounds { .. })
        ));
        assert_eq!(
            coord_of(60, dims(4, 3, 5)),
            Err(Error::RankOutOfRange {
                rank: 60,
                total: 60
            })
        );
    }

    #[test]
    fn zero_extent_rejected() {
        assert_eq!(Dims3::new(0, 2, 2), Err(Error::ZeroExtent(0, 2, 2)));
        assert_eq!(Dims3::new(2, 2, 0), Err(Error::ZeroExtent(2, 2, 0)));
        assert!(matches!(
            Dims3::new(u32::MAX, u32::MAX, u32::MAX),
            Err(Error::VolumeTooLarge(..))
        ));
    }

    #[test]
    fn parse_dims() {
        assert_eq!("6x4x4".parse::<Dims3>(), Ok(dims(6, 4, 4)));
        assert!("6x4".parse::<Dims3>().is_err());
        assert!("6x0x4".parse::<Dims3>().is_err());
        assert!("axbxc".parse::<Dims3>().is_err());
    }

    #[test]
    fn row_major_examples() {
        let cells = |p, n, m| row_major_path(dims(p, n, m)).into_cells();
        assert_eq!(
            cells(1, 1, 3),
            [
                Coord3::new(0, 0, 0),
                Coord3::new(0, 0, 1),
                Coord3::new(0, 0, 2)
            ]
        );
        assert_eq!(
            cells(1, 2, 2),
            [
                Coord3::new(0, 0, 0),
                Coord3::new(0, 0, 1),
                Coord3::new(0, 1, 0),
                Coord3::new(0, 1, 1)
            ]
        );
        assert_eq!(
            cells(2, 1, 2),
            [
                Coord3::new(0, 0, 0),
                Coord3::new(0, 0, 1),
                Coord3::new(1, 0, 0),
                Coord3::new(1, 0, 1)
            ]
        );
    }

    #[test]
    fn exhaustive_round_trip_small_volumes() {
        for p in 1..=16u32 {
            for n in 1..=16u32 {
                for m in 1..=16u32 {
                    let d = dims(p, n, m);
                    for k in 0..d.total() {
                        let coord = coord_of(k, d).unwrap();
                        assert_eq!(linear_index(coord, d), Ok(k));
                    }
                }
            }
        }
    }

    #[test]
    fn row_major_is_permutation_with_column_fastest() {
        for d in [dims(3, 4, 5), dims(1, 7, 2), dims(5, 1, 1)] {
            let path = row_major_path(d);
            assert!(path.rank_table().is_ok());
            for (k, (a, b)) in path.steps().enumerate() {
                if !(k as u64 + 1).is_multiple_of(d.cols() as u64) {
                    assert_eq!(b.c, a.c + 1);
                }
            }
            for (k, cell) in path.cells().iter().enumerate() {
                assert_eq!(coord_of(k as u64, d).unwrap(), *cell);
            }
        }
    }

    #[test]
    fn unit_steps() {
        for step in UnitStep::ALL {
            let v = step.vector();
            assert_eq!(v.iter().map(|x| x.abs()).sum::<i64>(), 1);
            assert_eq!(UnitStep::from_vector(v), Some(step));
        }
        assert_eq!(
            UnitStep::between(Coord3::new(1, 1, 1), Coord3::new(1, 0, 1)),
            Some(UnitStep::RowBack)
        );
        assert_eq!(
            UnitStep::between(Coord3::new(0, 0, 0), Coord3::new(1, 1, 0)),
            None
        );
    }

    #[test]
    fn edge_count_formula() {
        assert_eq!(dims(2, 2, 2).edge_count(), 12);
        assert_eq!(dims(1, 1, 2).edge_count(), 1);
        assert_eq!(dims(1, 1, 1).edge_count(), 0);
    }
}
