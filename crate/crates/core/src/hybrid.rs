//! Two-level orderings: one ordering across a grid of equal blocks and
//! another inside each block.

use crate::error::{Error, Result};
use crate::model::{Coord3, CurvePath, Dims3};
use crate::ordering::BaseOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HybridSpec {
    /// Extents of one block; each must divide the matching volume extent.
    pub block: Dims3,
    /// Ordering of the block grid.
    pub inter: BaseOrder,
    /// Ordering of cells within a block.
    pub intra: BaseOrder,
}

impl HybridSpec {
    pub fn new(block: Dims3, inter: BaseOrder, intra: BaseOrder) -> Self {
        Self {
            block,
            inter,
            intra,
        }
    }

    /// Checks divisibility and the component orderings; returns the block grid.
    pub fn validate(&self, dims: Dims3) -> Result<Dims3> {
        let grid = block_grid(dims, self.block)?;
        self.inter.validate(grid)?;
        self.intra.validate(self.block)?;
        Ok(grid)
    }
}

/// Number of blocks along each axis.
pub fn block_grid(dims: Dims3, block: Dims3) -> Result<Dims3> {
    let (d, b) = (dims.as_array(), block.as_array());
    if (0..3).any(|i| d[i] % b[i] != 0) {
        return Err(Error::BlockNotDivisor { block, dims });
    }
    Dims3::new(d[0] / b[0], d[1] / b[1], d[2] / b[2])
}

pub fn hybrid_order(dims: Dims3, spec: &HybridSpec) -> Result<CurvePath> {
    let grid = spec.validate(dims)?;
    let inter = spec.inter.generate(grid)?;
    let intra = spec.intra.generate(spec.block)?;
    let [bp, bn, bm] = spec.block.as_array();
    let mut cells = Vec::with_capacity(dims.total() as usize);
    for block in inter.cells() {
        let origin = Coord3::new(block.s * bp, block.r * bn, block.c * bm);
        cells.extend(intra.cells().iter().map(|c| c.offset(origin)));
    }
    Ok(CurvePath::new(dims, cells))
}
