//! Generalized Hilbert ordering for 3D volumes of arbitrary even extent.
//!
//! A block is described by a [`BlockFrame`]: an entry corner plus three
//! axis-aligned vectors. The first (travel) vector points along the direction
//! the curve is heading; the other two span the remaining axes. Each block is
//! classified by [`classify_split`] and either walked directly or split into
//! two, three or five child frames whose orientations chain each child's exit
//! onto the next child's entry.
//!
//! When every extent is even (or 1) consecutive cells are always face
//! neighbours. Odd extents still give a permutation, but some steps jump.

use std::fmt;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::model::{Coord3, CurvePath, Dims3};

/// Integer `(s, r, c)` vector.
pub type Vec3 = [i64; 3];

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn neg(a: Vec3) -> Vec3 {
    [-a[0], -a[1], -a[2]]
}

fn unit(a: Vec3) -> Vec3 {
    [a[0].signum(), a[1].signum(), a[2].signum()]
}

fn magnitude(a: Vec3) -> u64 {
    a.iter().map(|v| v.unsigned_abs()).sum()
}

/// The single non-zero axis of `a`, if it has exactly one.
fn axis_of(a: Vec3) -> Option<usize> {
    let mut found = None;
    for (i, &v) in a.iter().enumerate() {
        if v != 0 {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        }
    }
    found
}

/// A Hilbert sub-block: entry corner plus travel, height and depth vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockFrame {
    origin: Coord3,
    travel: Vec3,
    height: Vec3,
    depth: Vec3,
}

impl BlockFrame {
    pub fn new(origin: Coord3, travel: Vec3, height: Vec3, depth: Vec3) -> Result<Self> {
        let axes = [travel, height, depth].map(axis_of);
        let [Some(a), Some(b), Some(d)] = axes else {
            return Err(Error::InvalidFrame(format!(
                "vectors {travel:?}, {height:?}, {depth:?} must each have exactly one non-zero component"
            )));
        };
        if a == b || a == d || b == d {
            return Err(Error::InvalidFrame(format!(
                "vectors {travel:?}, {height:?}, {depth:?} must lie along distinct axes"
            )));
        }
        let frame = Self {
            origin,
            travel,
            height,
            depth,
        };
        let (lo, _) = frame.raw_bounds();
        if lo.iter().any(|&v| v < 0) {
            return Err(Error::InvalidFrame(format!(
                "block entered at {origin} extends below the origin"
            )));
        }
        Ok(frame)
    }

    /// The top-level frame for a volume.
    ///
    /// The travel axis is the longest one, then height, then depth, with ties
    /// resolved slab before row before column.
    pub fn for_volume(dims: Dims3) -> Self {
        let extents = dims.as_array();
        let mut order = [0usize, 1, 2];
        order.sort_by(|&x, &y| extents[y].cmp(&extents[x]));
        let vector = |axis: usize| {
            let mut v = [0i64; 3];
            v[axis] = extents[axis] as i64;
            v
        };
        Self {
            origin: Coord3::ORIGIN,
            travel: vector(order[0]),
            height: vector(order[1]),
            depth: vector(order[2]),
        }
    }

    pub fn origin(&self) -> Coord3 {
        self.origin
    }

    pub fn travel(&self) -> Vec3 {
        self.travel
    }

    pub fn height(&self) -> Vec3 {
        self.height
    }

    pub fn depth(&self) -> Vec3 {
        self.depth
    }

    /// `(w, h, d)`: lengths of the travel, height and depth vectors.
    pub fn extents(&self) -> (u64, u64, u64) {
        (
            magnitude(self.travel),
            magnitude(self.height),
            magnitude(self.depth),
        )
    }

    pub fn cell_count(&self) -> u64 {
        let (w, h, d) = self.extents();
        w * h * d
    }

    /// Orientation as a signed permutation matrix; column 0 is the travel direction.
    pub fn orientation(&self) -> [[i64; 3]; 3] {
        let cols = [unit(self.travel), unit(self.height), unit(self.depth)];
        let mut m = [[0; 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        m
    }

    fn raw_bounds(&self) -> (Vec3, Vec3) {
        let o = self.origin;
        let mut lo = [o.s as i64, o.r as i64, o.c as i64];
        let mut hi = lo;
        for v in [self.travel, self.height, self.depth] {
            for i in 0..3 {
                if v[i] > 0 {
                    hi[i] += v[i] - 1;
                } else if v[i] < 0 {
                    lo[i] += v[i] + 1;
                }
            }
        }
        (lo, hi)
    }

    /// Lowest corner of the block.
    pub fn min_corner(&self) -> Coord3 {
        let (lo, _) = self.raw_bounds();
        Coord3::new(lo[0] as u32, lo[1] as u32, lo[2] as u32)
    }

    /// Extents of the block along `[slab, row, col]`.
    pub fn box_extents(&self) -> [u32; 3] {
        let (lo, hi) = self.raw_bounds();
        [0, 1, 2].map(|i| (hi[i] - lo[i] + 1) as u32)
    }

    pub fn contains(&self, coord: Coord3) -> bool {
        let (lo, hi) = self.raw_bounds();
        let p = [coord.s as i64, coord.r as i64, coord.c as i64];
        (0..3).all(|i| lo[i] <= p[i] && p[i] <= hi[i])
    }
}

impl fmt::Display for BlockFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, n, m] = self.box_extents();
        write!(f, "{p}x{n}x{m}@{}", self.min_corner())
    }
}

/// How a block is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitKind {
    /// Two or more extents are 1: walk the longest axis.
    Straight,
    /// Much longer than it is high and deep: halve the travel axis.
    WideSplit2,
    /// Tall relative to depth: split height, then the lower half along width.
    TallSplit3,
    /// Deep relative to height: split depth, then the near half along width.
    DeepSplit3,
    /// General case: five blocks.
    FullSplit5,
}

/// Halves an axis vector, rounding the half up to even when it is odd and the
/// axis is longer than 2.
pub fn halve_even(axis: Vec3) -> Result<Vec3> {
    if axis_of(axis).is_none() {
        return Err(Error::InvalidFrame(format!(
            "cannot halve {axis:?}: expected a non-zero axis-aligned vector"
        )));
    }
    Ok(halve_unchecked(axis))
}

fn halve_unchecked(axis: Vec3) -> Vec3 {
    let len = magnitude(axis) as i64;
    let mut half = len / 2;
    if half % 2 == 1 && len > 2 {
        half += 1;
    }
    let u = unit(axis);
    [u[0] * half, u[1] * half, u[2] * half]
}

pub fn classify_split(w: u64, h: u64, d: u64) -> SplitKind {
    let ones = [w, h, d].iter().filter(|&&e| e == 1).count();
    if ones >= 2 {
        SplitKind::Straight
    } else if 2 * w > 3 * h && 2 * w > 3 * d {
        SplitKind::WideSplit2
    } else if 3 * h > 4 * d {
        SplitKind::TallSplit3
    } else if 3 * d > 4 * h {
        SplitKind::DeepSplit3
    } else {
        SplitKind::FullSplit5
    }
}

/// One level of the recursion: the classification and the non-empty child
/// frames in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPlan {
    pub kind: SplitKind,
    pub children: ArrayVec<BlockFrame, 5>,
}

/// Child frame at `origin + offset`, or `None` when it holds no cells.
fn child(
    origin: Coord3,
    offset: Vec3,
    travel: Vec3,
    height: Vec3,
    depth: Vec3,
) -> Option<BlockFrame> {
    if magnitude(travel) == 0 || magnitude(height) == 0 || magnitude(depth) == 0 {
        return None;
    }
    let at = [
        origin.s as i64 + offset[0],
        origin.r as i64 + offset[1],
        origin.c as i64 + offset[2],
    ];
    debug_assert!(at.iter().all(|&v| v >= 0));
    Some(BlockFrame {
        origin: Coord3::new(at[0] as u32, at[1] as u32, at[2] as u32),
        travel,
        height,
        depth,
    })
}

pub fn hilbert_block_plan(frame: &BlockFrame) -> BlockPlan {
    let (w, h, d) = frame.extents();
    let kind = classify_split(w, h, d);
    let mut children = ArrayVec::new();
    let (o, a, b, c) = (frame.origin, frame.travel, frame.height, frame.depth);
    let (da, db, dc) = (unit(a), unit(b), unit(c));
    let (a2, b2, c2) = (halve_unchecked(a), halve_unchecked(b), halve_unchecked(c));
    let zero = [0; 3];

    let plan: ArrayVec<Option<BlockFrame>, 5> = match kind {
        SplitKind::Straight => ArrayVec::new(),
        SplitKind::WideSplit2 => [child(o, zero, a2, b, c), child(o, a2, sub(a, a2), b, c)]
            .into_iter()
            .collect(),
        SplitKind::TallSplit3 => [
            child(o, zero, b2, c, a2),
            child(o, b2, a, sub(b, b2), c),
            child(o, add(sub(a, da), sub(b2, db)), neg(b2), c, neg(sub(a, a2))),
        ]
        .into_iter()
        .collect(),
        SplitKind::DeepSplit3 => [
            child(o, zero, c2, a2, b),
            child(o, c2, a, b, sub(c, c2)),
            child(o, add(sub(a, da), sub(c2, dc)), neg(c2), neg(sub(a, a2)), b),
        ]
        .into_iter()
        .collect(),
        SplitKind::FullSplit5 => [
            child(o, zero, b2, c2, a2),
            child(o, b2, c, a2, sub(b, b2)),
            child(o, add(sub(b2, db), sub(c, dc)), a, neg(b2), neg(sub(c, c2))),
            child(
                o,
                add(add(sub(a, da), b2), sub(c, dc)),
                neg(c),
                neg(sub(a, a2)),
                sub(b, b2),
            ),
            child(
                o,
                add(sub(a, da), sub(b2, db)),
                neg(b2),
                c2,
                neg(sub(a, a2)),
            ),
        ]
        .into_iter()
        .collect(),
    };
    children.extend(plan.into_iter().flatten());
    BlockPlan { kind, children }
}

/// Checks the even-extent rule: every extent greater than 1 must be even.
pub fn check_even(dims: Dims3) -> Result<()> {
    if dims.as_array().iter().any(|&e| e > 1 && e % 2 == 1) {
        return Err(Error::EvenDimensionsRequired(dims));
    }
    Ok(())
}

/// Streams the generalized Hilbert ordering of `dims` into `sink`.
pub fn hilbert_walk(dims: Dims3, allow_odd: bool, mut sink: impl FnMut(Coord3)) -> Result<()> {
    if !allow_odd {
        check_even(dims)?;
    }
    walk_frame(&BlockFrame::for_volume(dims), &mut sink);
    Ok(())
}

fn walk_frame(frame: &BlockFrame, sink: &mut impl FnMut(Coord3)) {
    let plan = hilbert_block_plan(frame);
    if plan.kind != SplitKind::Straight {
        for child in &plan.children {
            walk_frame(child, sink);
        }
        return;
    }
    let (w, h, d) = frame.extents();
    let (len, step) = if w >= h && w >= d {
        (w, unit(frame.travel))
    } else if h >= d {
        (h, unit(frame.height))
    } else {
        (d, unit(frame.depth))
    };
    let o = frame.origin;
    let mut pos = [o.s as i64, o.r as i64, o.c as i64];
    for _ in 0..len {
        sink(Coord3::new(pos[0] as u32, pos[1] as u32, pos[2] as u32));
        pos = add(pos, step);
    }
}

/// Generalized Hilbert path, starting at the origin.
///
/// Fails for odd extents greater than 1 unless `allow_odd` is set.
pub fn hilbert_general(dims: Dims3, allow_odd: bool) -> Result<CurvePath> {
    let mut cells = Vec::with_capacity(dims.total() as usize);
    hilbert_walk(dims, allow_odd, |c| cells.push(c))?;
    Ok(CurvePath::new(dims, cells))
}
