//! Generalized Morton (Z-order) ordering.
//!
//! Power-of-two volumes are ordered by bit interleaving. Arbitrary volumes are
//! split into eight octants of unequal size: octant 0 is the largest
//! power-of-two block in the corner, ordered by interleaving, and the other
//! seven octants are handled recursively in a fixed order.

use crate::error::{Error, Result};
use crate::model::{Coord3, CurvePath, Dims3, RankTable};

/// A `2^p × 2^n × 2^m` volume described by its bit counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pow2Shape {
    slab_bits: u32,
    row_bits: u32,
    col_bits: u32,
}

impl Pow2Shape {
    pub fn new(slab_bits: u32, row_bits: u32, col_bits: u32) -> Result<Self> {
        let total = slab_bits as u64 + row_bits as u64 + col_bits as u64;
        if total > 63 || slab_bits.max(row_bits).max(col_bits) > 32 {
            return Err(Error::ShapeTooLarge(total.min(u32::MAX as u64) as u32));
        }
        Ok(Self {
            slab_bits,
            row_bits,
            col_bits,
        })
    }

    /// The shape of `dims` if every extent is a power of two.
    pub fn from_dims(dims: Dims3) -> Option<Self> {
        let [p, n, m] = dims.as_array();
        if !(p.is_power_of_two() && n.is_power_of_two() && m.is_power_of_two()) {
            return None;
        }
        Self::new(p.trailing_zeros(), n.trailing_zeros(), m.trailing_zeros()).ok()
    }

    pub fn slab_bits(&self) -> u32 {
        self.slab_bits
    }

    pub fn row_bits(&self) -> u32 {
        self.row_bits
    }

    pub fn col_bits(&self) -> u32 {
        self.col_bits
    }

    pub fn total_bits(&self) -> u32 {
        self.slab_bits + self.row_bits + self.col_bits
    }

    pub fn cell_count(&self) -> u64 {
        1u64 << self.total_bits()
    }

    fn contains(&self, coord: Coord3) -> bool {
        fits(coord.s, self.slab_bits)
            && fits(coord.r, self.row_bits)
            && fits(coord.c, self.col_bits)
    }

    /// Bit positions owned by each axis, as `[slab, row, col]` masks.
    ///
    /// Level k contributes the column bit, then the row bit, then the slab bit,
    /// skipping any axis that has run out of bits.
    fn masks(&self) -> [u64; 3] {
        let mut masks = [0u64; 3];
        let mut pos = 0;
        let levels = self.slab_bits.max(self.row_bits).max(self.col_bits);
        for level in 0..levels {
            for (axis, bits) in [(2, self.col_bits), (1, self.row_bits), (0, self.slab_bits)] {
                if level < bits {
                    masks[axis] |= 1 << pos;
                    pos += 1;
                }
            }
        }
        masks
    }
}

fn fits(value: u32, bits: u32) -> bool {
    bits >= 32 || value >> bits == 0
}

/// Scatters the low bits of `value` into the set positions of `mask`.
fn deposit(mut value: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let lowest = mask & mask.wrapping_neg();
        if value & 1 != 0 {
            out |= lowest;
        }
        value >>= 1;
        mask ^= lowest;
    }
    out
}

/// Gathers the bits of `index` at the set positions of `mask`.
fn extract(index: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    let mut bit = 0;
    while mask != 0 {
        let lowest = mask & mask.wrapping_neg();
        if index & lowest != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        mask ^= lowest;
    }
    out
}

/// Morton index of `coord` inside a power-of-two volume.
pub fn interleave_pow2(coord: Coord3, shape: Pow2Shape) -> Result<u64> {
    if !shape.contains(coord) {
        return Err(Error::OutOfShape {
            coord,
            bits: [shape.slab_bits, shape.row_bits, shape.col_bits],
        });
    }
    let [ms, mr, mc] = shape.masks();
    Ok(deposit(coord.s as u64, ms) | deposit(coord.r as u64, mr) | deposit(coord.c as u64, mc))
}

/// Inverse of [`interleave_pow2`].
pub fn deinterleave_pow2(index: u64, shape: Pow2Shape) -> Result<Coord3> {
    let bits = shape.total_bits();
    if index >> bits != 0 {
        return Err(Error::IndexOutOfRange { index, bits });
    }
    Ok(decode_with(index, shape.masks()))
}

fn decode_with(index: u64, [ms, mr, mc]: [u64; 3]) -> Coord3 {
    Coord3::new(
        extract(index, ms) as u32,
        extract(index, mr) as u32,
        extract(index, mc) as u32,
    )
}

/// Extents of octant 0: the largest powers of two not exceeding each extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OctantExtents {
    pub slabs: u32,
    pub rows: u32,
    pub cols: u32,
}

impl OctantExtents {
    fn shape(&self) -> Pow2Shape {
        Pow2Shape {
            slab_bits: self.slabs.trailing_zeros(),
            row_bits: self.rows.trailing_zeros(),
            col_bits: self.cols.trailing_zeros(),
        }
    }
}

fn floor_pow2(v: u32) -> u32 {
    1 << (31 - v.leading_zeros())
}

pub fn octant0_extents(dims: Dims3) -> OctantExtents {
    OctantExtents {
        slabs: floor_pow2(dims.slabs()),
        rows: floor_pow2(dims.rows()),
        cols: floor_pow2(dims.cols()),
    }
}

/// Generalized Morton path for an arbitrary volume.
pub fn morton_general(dims: Dims3) -> CurvePath {
    let mut cells = Vec::with_capacity(dims.total() as usize);
    let [p, n, m] = dims.as_array();
    octant_walk(m, n, p, Coord3::ORIGIN, &mut cells);
    CurvePath::new(dims, cells)
}

/// One call of the octant recursion: a `cols × rows × slabs` block at `origin`.
fn octant_walk(cols: u32, rows: u32, slabs: u32, origin: Coord3, out: &mut Vec<Coord3>) {
    if cols == 0 || rows == 0 || slabs == 0 {
        return;
    }
    let (c, r, s) = (floor_pow2(cols), floor_pow2(rows), floor_pow2(slabs));
    let oct = OctantExtents {
        slabs: s,
        rows: r,
        cols: c,
    };
    let shape = oct.shape();
    let masks = shape.masks();
    out.extend((0..shape.cell_count()).map(|idx| decode_with(idx, masks).offset(origin)));

    let Coord3 {
        s: s0,
        r: r0,
        c: c0,
    } = origin;
    let at = |ds: u32, dr: u32, dc: u32| Coord3::new(s0 + ds, r0 + dr, c0 + dc);
    octant_walk(cols - c, r, s, at(0, 0, c), out);
    octant_walk(c, rows - r, s, at(0, r, 0), out);
    octant_walk(cols - c, rows - r, s, at(0, r, c), out);
    octant_walk(c, r, slabs - s, at(s, 0, 0), out);
    octant_walk(cols - c, r, slabs - s, at(s, 0, c), out);
    octant_walk(c, rows - r, slabs - s, at(s, r, 0), out);
    octant_walk(cols - c, rows - r, slabs - s, at(s, r, c), out);
}

/// Coord → rank map of [`morton_general`].
pub fn morton_rank_table(dims: Dims3) -> RankTable {
    morton_general(dims)
        .rank_table()
        .expect("morton_general always yields a permutation")
}
